//! Exact combinatorics of Cox rings for normal rational varieties of
//! complexity one.
//!
//! The crate is split along the objects it manipulates:
//!
//! * [`abelian`]: finitely generated abelian groups given by integer
//!   presentation matrices (Smith/Hermite normal forms, cokernels, Hom groups,
//!   exactness checks).
//! * [`ring`]: the graded trinomial algebra `R(A, P0)` built from a matrix of
//!   points of the projective line and a family of exponent vectors.
//! * [`platonic`]: the Platonic tuple/ring criterion and the log terminality
//!   verdict derived from it.
//! * [`geometry`]: translation of exceptional-point data into ring input and
//!   the generators-and-relations presentation of the `U`-invariants.
//! * [`iteration`]: exponent-vector dynamics along the iteration of Cox rings.
//!
//! All arithmetic is exact (arbitrary precision integers and rationals).

pub mod abelian;
pub mod geometry;
pub mod iteration;
pub mod platonic;
pub mod ring;

pub use abelian::{
    check_exact, cokernel, element_eq, forget_grading, hom_group, localize, smith_normal_form,
    AbelianError, FgAbelianGroup, GroupHom, IntegerMatrix, SmithDecomposition,
};
pub use geometry::{ComplexityOneData, ExceptionalPoint, PresentationU};
pub use iteration::{ExponentConfig, IterationTrace, RamificationProfile, TraceStatus};
pub use platonic::{GeometryFlags, LogTerminalReport, PlatonicVerdict, TupleChoice};
pub use ring::{ExponentData, Polynomial, ProjectivePoint, RingData, Trinomial, Var};
