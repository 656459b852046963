//! Exponent-vector dynamics along the iteration of Cox rings.
//!
//! Each step is a finite quotient `P^1 -> P^1` of degree `d`. A point with
//! exponent vector `v` and fiber size `l` (with `l | d`) is replaced by `l`
//! points whose exponent vectors list `v_i / (d/l)` repeated `m_i` times,
//! where `m_i` counts the divisors over the fiber point coming from the
//! `i`-th divisor. All points of one fiber share the lineage tag of their
//! parent, and the number `u` of tags carrying a non-primitive vector can
//! only go down.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IterationError {
    #[error("exponent vectors must be nonempty")]
    EmptyVector,
    #[error("exponent vector entries must be at least 1")]
    NonPositiveEntry,
    #[error("the degree of a quotient must be at least 1")]
    ZeroDegree,
    #[error("fiber size {fiber} does not divide degree {degree}")]
    BadFiber { degree: u64, fiber: u64 },
    #[error("ramification index {index} does not divide entry {entry}")]
    Indivisible { index: u64, entry: u64 },
    #[error("{got} multiplicities given for a vector of length {expected}")]
    MisalignedMultiplicities { expected: usize, got: usize },
    #[error("profile refers to point {0}, which does not exist")]
    UnknownPoint(usize),
    #[error("points of class {0} would carry different exponent vectors")]
    InconsistentClass(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigPoint {
    /// Lineage tag: points descending from one original point share it.
    pub class_id: String,
    pub vector: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentConfig {
    points: Vec<ConfigPoint>,
}

impl ExponentConfig {
    pub fn new(points: Vec<ConfigPoint>) -> Result<Self, IterationError> {
        let mut seen: BTreeMap<&str, &Vec<u64>> = BTreeMap::new();
        for p in &points {
            check_vector(&p.vector)?;
            if let Some(v) = seen.insert(&p.class_id, &p.vector) {
                if v != &p.vector {
                    return Err(IterationError::InconsistentClass(p.class_id.clone()));
                }
            }
        }
        Ok(Self { points })
    }

    /// One class per vector, tagged `x0, x1, ...`.
    pub fn from_vectors(vectors: Vec<Vec<u64>>) -> Result<Self, IterationError> {
        Self::new(
            vectors
                .into_iter()
                .enumerate()
                .map(|(i, vector)| ConfigPoint {
                    class_id: format!("x{i}"),
                    vector,
                })
                .collect(),
        )
    }

    pub fn points(&self) -> &[ConfigPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Representative vector of each class.
    pub fn classes(&self) -> BTreeMap<&str, &[u64]> {
        self.points
            .iter()
            .map(|p| (p.class_id.as_str(), p.vector.as_slice()))
            .collect()
    }
}

fn check_vector(v: &[u64]) -> Result<(), IterationError> {
    if v.is_empty() {
        return Err(IterationError::EmptyVector);
    }
    if v.contains(&0) {
        return Err(IterationError::NonPositiveEntry);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberData {
    pub fiber_size: u64,
    pub multiplicities: Vec<u64>,
}

/// Data of one finite quotient: its degree and, per point index of the
/// current configuration, the fiber size and divisor multiplicities. Points
/// left out are unramified (`l = d`, all `m_i = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    degree: u64,
    per_point: BTreeMap<usize, FiberData>,
}

impl RamificationProfile {
    pub fn new(degree: u64, per_point: BTreeMap<usize, FiberData>) -> Result<Self, IterationError> {
        if degree == 0 {
            return Err(IterationError::ZeroDegree);
        }
        for f in per_point.values() {
            if f.fiber_size == 0 || !degree.is_multiple_of(f.fiber_size) {
                return Err(IterationError::BadFiber {
                    degree,
                    fiber: f.fiber_size,
                });
            }
            if f.multiplicities.contains(&0) {
                return Err(IterationError::NonPositiveEntry);
            }
        }
        Ok(Self { degree, per_point })
    }

    pub fn unramified(degree: u64) -> Result<Self, IterationError> {
        Self::new(degree, BTreeMap::new())
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn per_point(&self) -> &BTreeMap<usize, FiberData> {
        &self.per_point
    }
}

pub fn is_primitive(v: &[u64]) -> Result<bool, IterationError> {
    if v.is_empty() {
        return Err(IterationError::EmptyVector);
    }
    Ok(vector_gcd(v) == 1)
}

pub fn vector_gcd(v: &[u64]) -> u64 {
    v.iter().fold(0, |g, &x| g.gcd(&x))
}

/// Exponent vectors of the `l` points over a point with vector `v`.
pub fn pullback_vector(
    v: &[u64],
    degree: u64,
    fiber: u64,
    mult: &[u64],
) -> Result<Vec<Vec<u64>>, IterationError> {
    check_vector(v)?;
    if degree == 0 {
        return Err(IterationError::ZeroDegree);
    }
    if fiber == 0 || !degree.is_multiple_of(fiber) {
        return Err(IterationError::BadFiber { degree, fiber });
    }
    if mult.len() != v.len() {
        return Err(IterationError::MisalignedMultiplicities {
            expected: v.len(),
            got: mult.len(),
        });
    }
    if mult.contains(&0) {
        return Err(IterationError::NonPositiveEntry);
    }
    let index = degree / fiber;
    let mut out = Vec::new();
    for (&entry, &m) in v.iter().zip(mult) {
        if entry % index != 0 {
            return Err(IterationError::Indivisible { index, entry });
        }
        out.extend(std::iter::repeat_n(entry / index, m as usize));
    }
    Ok(vec![out; fiber as usize])
}

pub fn step(
    config: &ExponentConfig,
    profile: &RamificationProfile,
) -> Result<ExponentConfig, IterationError> {
    if let Some(&bad) = profile.per_point.keys().find(|&&i| i >= config.len()) {
        return Err(IterationError::UnknownPoint(bad));
    }
    let mut points = Vec::new();
    for (i, p) in config.points.iter().enumerate() {
        let fibers = match profile.per_point.get(&i) {
            Some(f) => pullback_vector(&p.vector, profile.degree, f.fiber_size, &f.multiplicities)?,
            None => pullback_vector(
                &p.vector,
                profile.degree,
                profile.degree,
                &vec![1; p.vector.len()],
            )?,
        };
        points.extend(fibers.into_iter().map(|vector| ConfigPoint {
            class_id: p.class_id.clone(),
            vector,
        }));
    }
    ExponentConfig::new(points)
}

/// Number of classes whose vector is not primitive.
pub fn u_count(config: &ExponentConfig) -> usize {
    config
        .classes()
        .values()
        .filter(|v| vector_gcd(v) != 1)
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStatus {
    AllPrimitive,
    Exhausted,
    InvalidProfile { step: usize, error: IterationError },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationTrace {
    pub configs: Vec<ExponentConfig>,
    pub u_sequence: Vec<usize>,
    pub status: TraceStatus,
}

pub const DEFAULT_MAX_STEPS: usize = 64;

/// Applies `profiles` in order, stopping once every class is primitive.
pub fn run(
    config: &ExponentConfig,
    profiles: &[RamificationProfile],
    max_steps: usize,
) -> IterationTrace {
    drive(config, max_steps, |n, _| profiles.get(n).cloned())
}

/// Repeats [`heuristic_gcd_profile`] until every class is primitive.
pub fn run_heuristic(config: &ExponentConfig, max_steps: usize) -> IterationTrace {
    drive(config, max_steps, |_, c| Some(heuristic_gcd_profile(c)))
}

fn drive(
    config: &ExponentConfig,
    max_steps: usize,
    mut next_profile: impl FnMut(usize, &ExponentConfig) -> Option<RamificationProfile>,
) -> IterationTrace {
    let mut trace = IterationTrace {
        configs: vec![config.clone()],
        u_sequence: vec![u_count(config)],
        status: TraceStatus::Exhausted,
    };
    if trace.u_sequence[0] == 0 {
        trace.status = TraceStatus::AllPrimitive;
        return trace;
    }
    for n in 0..max_steps {
        let current = trace.configs.last().expect("nonempty trace");
        let Some(profile) = next_profile(n, current) else {
            break;
        };
        match step(current, &profile) {
            Ok(next) => {
                let u = u_count(&next);
                trace.configs.push(next);
                trace.u_sequence.push(u);
                if u == 0 {
                    trace.status = TraceStatus::AllPrimitive;
                    return trace;
                }
            }
            Err(error) => {
                trace.status = TraceStatus::InvalidProfile { step: n, error };
                return trace;
            }
        }
    }
    trace
}

/// Heuristic profile dividing every class by its own gcd: degree is the lcm
/// of the gcds and each point gets fiber size `d / gcd`. Not derived from
/// any Picard torsion data.
pub fn heuristic_gcd_profile(config: &ExponentConfig) -> RamificationProfile {
    let gcds: Vec<u64> = config
        .points
        .iter()
        .map(|p| vector_gcd(&p.vector))
        .collect();
    let degree = gcds.iter().fold(1u64, |acc, g| acc.lcm(g));
    let per_point = config
        .points
        .iter()
        .zip(&gcds)
        .enumerate()
        .map(|(i, (p, g))| {
            (
                i,
                FiberData {
                    fiber_size: degree / g,
                    multiplicities: vec![1; p.vector.len()],
                },
            )
        })
        .collect();
    RamificationProfile::new(degree, per_point).expect("gcds divide their lcm")
}

/// Distinct class tags in first-appearance order.
pub fn class_order(config: &ExponentConfig) -> Vec<String> {
    let mut seen = BTreeSet::new();
    config
        .points
        .iter()
        .filter(|p| seen.insert(p.class_id.clone()))
        .map(|p| p.class_id.clone())
        .collect()
}
