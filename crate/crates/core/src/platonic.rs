//! Platonic tuples, Platonic rings, and the log terminality verdict for
//! total coordinate spaces.
//!
//! A tuple of positive integers is Platonic when, sorted decreasingly, its
//! first three entries (padding with 1s) form one of `(5,3,2)`, `(4,3,2)`,
//! `(3,3,2)`, `(x,2,2)`, `(x,y,1)` and every later entry is 1. The ring
//! `R(A, P0)` is Platonic when `r <= 1` or every choice of one entry per
//! exponent vector gives a Platonic tuple.
//!
//! Platonicity is downward closed under coordinatewise decrease, so a ring
//! is Platonic iff the tuple of per-vector maxima is. The test suite checks
//! that closure property by brute force.

use thiserror::Error;

use crate::ring::ExponentData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlatonicError {
    #[error("tuple entries must be positive")]
    NonPositiveEntry,
    #[error("the spherical and complexity-one flags are mutually exclusive")]
    ConflictingFlags,
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("exponent data is required outside the spherical case")]
    MissingExponents,
}

/// One entry chosen from each exponent vector, in vector order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleChoice(pub Vec<u64>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlatonicVerdict {
    pub platonic: bool,
    /// A non-Platonic tuple, present exactly when `platonic` is false.
    pub witness: Option<TupleChoice>,
}

/// User assertions about the variety. Nothing here is verified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GeometryFlags {
    pub almost_homogeneous: bool,
    pub complexity_one: bool,
    /// Only constant invertible regular functions.
    pub units_constant: bool,
    pub spherical: bool,
    pub q_factorial_projective: bool,
    pub smooth: bool,
    pub complete: bool,
    /// Torus action whose invariant regular functions are constant.
    pub torus_invariants_constant: bool,
}

impl GeometryFlags {
    pub fn validate(&self) -> Result<(), PlatonicError> {
        if self.spherical && self.complexity_one {
            return Err(PlatonicError::ConflictingFlags);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogTerminalReport {
    pub verdict: bool,
    /// Which criterion produced the verdict.
    pub basis: String,
    /// Fano type, reported only for Q-factorial projective varieties.
    pub fano_type: Option<bool>,
    pub platonic: Option<PlatonicVerdict>,
}

pub fn is_platonic_tuple(t: &[u64]) -> Result<bool, PlatonicError> {
    if t.contains(&0) {
        return Err(PlatonicError::NonPositiveEntry);
    }
    let mut sorted = t.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    while sorted.len() < 3 {
        sorted.push(1);
    }
    if sorted[3..].iter().any(|&x| x != 1) {
        return Ok(false);
    }
    Ok(matches!(
        (sorted[0], sorted[1], sorted[2]),
        (5, 3, 2) | (4, 3, 2) | (3, 3, 2) | (_, 2, 2) | (_, _, 1)
    ))
}

/// Platonic criterion for `R(A, P0)`, decided on the tuple of per-vector
/// maxima.
pub fn is_platonic_ring(exponents: &ExponentData) -> PlatonicVerdict {
    if exponents.r() <= 1 {
        return PlatonicVerdict {
            platonic: true,
            witness: None,
        };
    }
    let maxima: Vec<u64> = exponents
        .vectors()
        .iter()
        .map(|v| *v.iter().max().expect("nonempty exponent vector"))
        .collect();
    let platonic = is_platonic_tuple(&maxima).expect("exponents are positive");
    PlatonicVerdict {
        platonic,
        witness: (!platonic).then_some(TupleChoice(maxima)),
    }
}

pub const BASIS_SPHERICAL: &str = "spherical: total coordinate space is log terminal";
pub const BASIS_COMPLEXITY_ONE: &str =
    "almost homogeneous complexity one with constant units: log terminal iff the U-invariant ring is Platonic";

/// Log terminality of the total coordinate space.
///
/// `exponents` is ignored in the spherical case and may then be `None`.
pub fn log_terminal(
    exponents: Option<&ExponentData>,
    flags: &GeometryFlags,
) -> Result<LogTerminalReport, PlatonicError> {
    flags.validate()?;
    let fano = |verdict: bool| flags.q_factorial_projective.then_some(verdict);
    if flags.spherical {
        return Ok(LogTerminalReport {
            verdict: true,
            basis: BASIS_SPHERICAL.to_string(),
            fano_type: fano(true),
            platonic: None,
        });
    }
    let missing: Vec<&str> = [
        (flags.almost_homogeneous, "almost_homogeneous"),
        (flags.complexity_one, "complexity_one"),
        (flags.units_constant, "units_constant"),
    ]
    .into_iter()
    .filter(|(set, _)| !set)
    .map(|(_, name)| name)
    .collect();
    if !missing.is_empty() {
        return Err(PlatonicError::HypothesesNotMet(format!(
            "missing {}",
            missing.join(", ")
        )));
    }
    let exponents = exponents.ok_or(PlatonicError::MissingExponents)?;
    let verdict = is_platonic_ring(exponents);
    Ok(LogTerminalReport {
        verdict: verdict.platonic,
        basis: BASIS_COMPLEXITY_ONE.to_string(),
        fano_type: fano(verdict.platonic),
        platonic: Some(verdict),
    })
}

/// Exhaustive check over all tuple choices. Exponential in `r`; used to
/// validate the maxima shortcut.
pub fn is_platonic_ring_exhaustive(exponents: &ExponentData) -> PlatonicVerdict {
    if exponents.r() <= 1 {
        return PlatonicVerdict {
            platonic: true,
            witness: None,
        };
    }
    let vectors = exponents.vectors();
    let mut choice = vec![0usize; vectors.len()];
    loop {
        let tuple: Vec<u64> = choice.iter().zip(vectors).map(|(&c, v)| v[c]).collect();
        if !is_platonic_tuple(&tuple).expect("positive") {
            return PlatonicVerdict {
                platonic: false,
                witness: Some(TupleChoice(tuple)),
            };
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return PlatonicVerdict {
                    platonic: true,
                    witness: None,
                };
            }
            choice[pos] += 1;
            if choice[pos] < vectors[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}
