//! Finitely generated abelian groups presented as cokernels of integer
//! matrices.
//!
//! A group is always stored together with the presentation it came from: an
//! `n x k` matrix `M` whose columns span the relation lattice inside the
//! ambient free group `Z^n`. Elements are integer vectors of length `n`
//! ("ambient coordinates"), and two of them are equal in the group when their
//! difference lies in the column span of `M`.

mod hnf;
mod matrix;
mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use thiserror::Error;

pub use hnf::Lattice;
pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("a {rows}x{cols} matrix needs {} entries, got {got}", rows * cols)]
    EntryCount {
        rows: usize,
        cols: usize,
        got: usize,
    },
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix does not send source relation {column} into the target relation lattice")]
    NotWellDefined { column: usize },
    #[error("maps are not composable: target of the first is not the source of the second")]
    NotComposable,
    #[error("the source of the character map must be a free abelian group")]
    NonFreeSource,
    #[error("cyclic orders must be positive, got {0}")]
    InvalidOrder(BigInt),
}

/// A finitely generated abelian group `Z^n / im(M)` in invariant-factor form.
#[derive(Clone, Debug)]
pub struct FgAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
    presentation: IntegerMatrix,
    change_of_basis: SmithDecomposition,
    relations: Lattice,
}

/// Two groups compare equal when they are isomorphic, i.e. when their free
/// ranks and invariant factors agree. Use
/// [`FgAbelianGroup::same_presentation`] to compare presentations.
impl PartialEq for FgAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors == other.invariant_factors
    }
}

impl Eq for FgAbelianGroup {}

impl FgAbelianGroup {
    /// `Z^rows / im(presentation)`.
    pub fn from_presentation(presentation: IntegerMatrix) -> Self {
        let change_of_basis = smith_normal_form(&presentation);
        let rank = change_of_basis.rank();
        let invariant_factors = change_of_basis
            .diagonal()
            .into_iter()
            .take(rank)
            .filter(|d| !d.is_one())
            .collect();
        let relations = Lattice::from_generators(
            presentation.rows(),
            &(0..presentation.cols())
                .map(|j| presentation.column(j))
                .collect::<Vec<_>>(),
        )
        .expect("columns have ambient length");
        Self {
            free_rank: presentation.rows() - rank,
            invariant_factors,
            presentation,
            change_of_basis,
            relations,
        }
    }

    /// `Z^free_rank ⊕ Z/o_1 ⊕ ... ⊕ Z/o_k` for arbitrary positive orders
    /// (not necessarily a divisibility chain; order 1 summands are trivial).
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Result<Self, AbelianError> {
        if let Some(bad) = orders.iter().find(|o| !o.is_positive()) {
            return Err(AbelianError::InvalidOrder(bad.clone()));
        }
        let n = free_rank + orders.len();
        let mut m = IntegerMatrix::zeros(n, orders.len());
        for (j, o) in orders.iter().enumerate() {
            m[(free_rank + j, j)] = o.clone();
        }
        Ok(Self::from_presentation(m))
    }

    pub fn free(rank: usize) -> Self {
        Self::from_presentation(IntegerMatrix::zeros(rank, 0))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn presentation(&self) -> &IntegerMatrix {
        &self.presentation
    }

    pub fn change_of_basis(&self) -> &SmithDecomposition {
        &self.change_of_basis
    }

    pub fn relations(&self) -> &Lattice {
        &self.relations
    }

    /// Rank of the ambient free group the presentation lives in.
    pub fn ambient_rank(&self) -> usize {
        self.presentation.rows()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Cardinality, or `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }

    pub fn same_presentation(&self, other: &Self) -> bool {
        self.presentation == other.presentation
    }

    /// Canonical coordinates of an ambient vector: residues modulo each
    /// invariant factor, followed by the free coordinates.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<(Vec<BigInt>, Vec<BigInt>), AbelianError> {
        let y = self.change_of_basis.u.mul_vec(x)?;
        let diag = self.change_of_basis.diagonal();
        let rank = self.change_of_basis.rank();
        let torsion = diag
            .iter()
            .zip(&y)
            .take(rank)
            .filter(|(d, _)| !d.is_one())
            .map(|(d, yi)| yi.mod_floor(d))
            .collect();
        Ok((torsion, y[rank..].to_vec()))
    }

    fn check_len(&self, v: &[BigInt]) -> Result<(), AbelianError> {
        if v.len() != self.ambient_rank() {
            return Err(AbelianError::DimensionMismatch {
                expected: self.ambient_rank(),
                got: v.len(),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// A homomorphism given by an integer matrix on ambient coordinates.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: IntegerMatrix,
}

impl GroupHom {
    /// Checks shape and that every source relation lands in the target
    /// relation lattice.
    pub fn new(
        source: FgAbelianGroup,
        target: FgAbelianGroup,
        matrix: IntegerMatrix,
    ) -> Result<Self, AbelianError> {
        if matrix.rows() != target.ambient_rank() {
            return Err(AbelianError::DimensionMismatch {
                expected: target.ambient_rank(),
                got: matrix.rows(),
            });
        }
        if matrix.cols() != source.ambient_rank() {
            return Err(AbelianError::DimensionMismatch {
                expected: source.ambient_rank(),
                got: matrix.cols(),
            });
        }
        let rel = source.presentation();
        for j in 0..rel.cols() {
            let image = matrix.mul_vec(&rel.column(j))?;
            if !target.relations().contains(&image)? {
                return Err(AbelianError::NotWellDefined { column: j });
            }
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: FgAbelianGroup, target: FgAbelianGroup) -> Self {
        let matrix = IntegerMatrix::zeros(target.ambient_rank(), source.ambient_rank());
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>, AbelianError> {
        self.matrix.mul_vec(x)
    }

    /// Preimage of the zero class, as a lattice in source ambient
    /// coordinates (it always contains the source relations).
    pub fn kernel_lattice(&self) -> Lattice {
        let n = self.source.ambient_rank();
        let joint = self
            .matrix
            .hstack(self.target.presentation())
            .expect("rows agree");
        let snf = smith_normal_form(&joint);
        let mut gens: Vec<Vec<BigInt>> = snf
            .kernel_basis()
            .into_iter()
            .map(|k| k[..n].to_vec())
            .collect();
        gens.extend(columns(self.source.presentation()));
        Lattice::from_generators(n, &gens).expect("ambient length")
    }

    /// Image plus target relations, as a lattice in target ambient
    /// coordinates.
    pub fn image_lattice(&self) -> Lattice {
        let mut gens = columns(&self.matrix);
        gens.extend(columns(self.target.presentation()));
        Lattice::from_generators(self.target.ambient_rank(), &gens).expect("ambient length")
    }
}

fn columns(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

pub fn cokernel(m: &IntegerMatrix) -> FgAbelianGroup {
    FgAbelianGroup::from_presentation(m.clone())
}

/// Whether `a` and `b` define the same element of `group`.
pub fn element_eq(
    group: &FgAbelianGroup,
    a: &[BigInt],
    b: &[BigInt],
) -> Result<bool, AbelianError> {
    group.check_len(a)?;
    group.check_len(b)?;
    let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    group.relations().contains(&diff)
}

/// `Hom(A, B)` computed from the invariant-factor decompositions:
/// `Z^(rA rB) ⊕ (⊕_j Z/e_j)^rA ⊕ ⊕_{i,j} Z/gcd(d_i, e_j)`.
pub fn hom_group(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let mut orders = Vec::new();
    for e in b.invariant_factors() {
        orders.extend(std::iter::repeat_n(e.clone(), a.free_rank()));
    }
    for d in a.invariant_factors() {
        for e in b.invariant_factors() {
            orders.push(d.gcd(e));
        }
    }
    FgAbelianGroup::from_cyclic_orders(a.free_rank() * b.free_rank(), &orders)
        .expect("orders are positive")
}

/// Quotient of `cl` by the subgroup generated by `removed_classes`.
pub fn localize(
    cl: &FgAbelianGroup,
    removed_classes: &[Vec<BigInt>],
) -> Result<FgAbelianGroup, AbelianError> {
    let extra = IntegerMatrix::from_columns(cl.ambient_rank(), removed_classes)?;
    Ok(FgAbelianGroup::from_presentation(
        cl.presentation().hstack(&extra)?,
    ))
}

/// Exactness of `A --f--> B --g--> C` at `B`.
pub fn check_exact(f: &GroupHom, g: &GroupHom) -> Result<bool, AbelianError> {
    if !f.target().same_presentation(g.source()) {
        return Err(AbelianError::NotComposable);
    }
    Ok(f.image_lattice() == g.kernel_lattice())
}

/// Whether `g ∘ f` is the zero map.
pub fn composite_is_zero(f: &GroupHom, g: &GroupHom) -> Result<bool, AbelianError> {
    if !f.target().same_presentation(g.source()) {
        return Err(AbelianError::NotComposable);
    }
    Ok(f.image_lattice().is_sublattice_of(&g.kernel_lattice()))
}

/// Cokernel of the character map `gamma` into the equivariant class group.
pub fn forget_grading(
    class_group: &FgAbelianGroup,
    gamma: &GroupHom,
) -> Result<FgAbelianGroup, AbelianError> {
    if !gamma.source().is_free() {
        return Err(AbelianError::NonFreeSource);
    }
    if !gamma.target().same_presentation(class_group) {
        return Err(AbelianError::NotComposable);
    }
    Ok(FgAbelianGroup::from_presentation(
        class_group.presentation().hstack(gamma.matrix())?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn mat(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn cyclic(n: i64) -> FgAbelianGroup {
        FgAbelianGroup::from_cyclic_orders(0, &bi(&[n])).unwrap()
    }

    #[test]
    fn cokernel_examples() {
        assert!(cokernel(&IntegerMatrix::identity(2)).is_trivial());
        let g = cokernel(&mat(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(g.free_rank(), 0);
        assert_eq!(g.invariant_factors(), bi(&[6]));
        let z2 = cokernel(&IntegerMatrix::zeros(2, 0));
        assert_eq!(z2.free_rank(), 2);
        assert!(z2.invariant_factors().is_empty());
        assert_eq!(z2.to_string(), "Z^2");
    }

    #[test]
    fn element_eq_examples() {
        let g = cokernel(&mat(&[vec![2], vec![0]]));
        assert!(element_eq(&g, &bi(&[2, 0]), &bi(&[0, 0])).unwrap());
        assert!(!element_eq(&g, &bi(&[1, 0]), &bi(&[0, 0])).unwrap());
        assert!(element_eq(&g, &bi(&[1]), &bi(&[0, 0])).is_err());
        let trivial = cokernel(&mat(&[vec![1]]));
        assert!(element_eq(&trivial, &bi(&[5]), &bi(&[-3])).unwrap());
    }

    #[test]
    fn hom_examples() {
        let z = FgAbelianGroup::free(1);
        let h = hom_group(&z, &cyclic(4));
        assert_eq!((h.free_rank(), h.invariant_factors()), (0, &bi(&[4])[..]));
        let h = hom_group(&cyclic(6), &cyclic(4));
        assert_eq!((h.free_rank(), h.invariant_factors()), (0, &bi(&[2])[..]));
        let h = hom_group(&FgAbelianGroup::free(2), &z);
        assert_eq!((h.free_rank(), h.invariant_factors().len()), (2, 0));
    }

    #[test]
    fn localize_examples() {
        let z = FgAbelianGroup::free(1);
        assert!(localize(&z, &[bi(&[1])]).unwrap().is_trivial());
        assert_eq!(localize(&z, &[bi(&[2])]).unwrap(), cyclic(2));
        assert_eq!(
            localize(&FgAbelianGroup::free(2), &[]).unwrap(),
            FgAbelianGroup::free(2)
        );
        assert!(localize(&z, &[bi(&[1, 0])]).is_err());
    }

    #[test]
    fn exactness_examples() {
        let z = FgAbelianGroup::free(1);
        let z_mod_2 = cokernel(&mat(&[vec![2]]));
        let double = GroupHom::new(z.clone(), z.clone(), mat(&[vec![2]])).unwrap();
        let proj = GroupHom::new(z.clone(), z_mod_2, mat(&[vec![1]])).unwrap();
        assert!(check_exact(&double, &proj).unwrap());
        assert!(!check_exact(&double, &double).unwrap());
        assert!(!composite_is_zero(&double, &double).unwrap());

        let id = GroupHom::new(z.clone(), z.clone(), mat(&[vec![1]])).unwrap();
        let from_zero = GroupHom::zero(FgAbelianGroup::trivial(), z.clone());
        assert!(check_exact(&from_zero, &id).unwrap());

        assert_eq!(
            check_exact(&proj, &double).unwrap_err(),
            AbelianError::NotComposable
        );
    }

    #[test]
    fn ill_defined_map_rejected() {
        // Z/2 -> Z sending the generator to 1 is not a homomorphism
        let z_mod_2 = cokernel(&mat(&[vec![2]]));
        let err = GroupHom::new(z_mod_2, FgAbelianGroup::free(1), mat(&[vec![1]])).unwrap_err();
        assert_eq!(err, AbelianError::NotWellDefined { column: 0 });
    }

    #[test]
    fn forget_grading_examples() {
        let z2 = FgAbelianGroup::free(2);
        let incl = GroupHom::new(
            FgAbelianGroup::free(1),
            z2.clone(),
            mat(&[vec![1], vec![0]]),
        )
        .unwrap();
        assert_eq!(forget_grading(&z2, &incl).unwrap(), FgAbelianGroup::free(1));

        let z = FgAbelianGroup::free(1);
        let triple = GroupHom::new(z.clone(), z.clone(), mat(&[vec![3]])).unwrap();
        assert_eq!(forget_grading(&z, &triple).unwrap(), cyclic(3));

        let z4 = cyclic(4);
        let none = GroupHom::zero(FgAbelianGroup::trivial(), z4.clone());
        assert_eq!(forget_grading(&z4, &none).unwrap(), cyclic(4));

        let torsion_source = GroupHom::zero(cyclic(2), z4.clone());
        assert_eq!(
            forget_grading(&z4, &torsion_source).unwrap_err(),
            AbelianError::NonFreeSource
        );
    }

    #[test]
    fn coordinates_detect_equality() {
        let g = cokernel(&mat(&[vec![2, 4], vec![6, 8]]));
        let (t1, f1) = g.coordinates(&bi(&[1, 1])).unwrap();
        let (t2, f2) = g.coordinates(&bi(&[3, 7])).unwrap();
        assert_eq!(
            (t1 == t2 && f1 == f2),
            element_eq(&g, &bi(&[1, 1]), &bi(&[3, 7])).unwrap()
        );
        assert_eq!(g.order(), Some(BigInt::from(8)));
    }
}
