//! From exceptional-point data of a complexity-one variety to ring input,
//! and the generators-and-relations presentation of `Cox^G(X)^U`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::platonic::GeometryFlags;
use crate::ring::{render_rational, ExponentData, ProjectivePoint, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("exceptional point {0} has no multiplicities")]
    EmptyMultiplicities(usize),
    #[error("multiplicity {1} of exceptional point {0} must be at least 1")]
    BadMultiplicity(usize, usize),
    #[error("exceptional points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalPoint {
    pub coords: ProjectivePoint,
    /// Multiplicities of the exceptional divisors in the pullback of the point.
    pub multiplicities: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityOneData {
    points: Vec<ExceptionalPoint>,
    dominating_count: usize,
}

/// A 2x2 rational matrix acting on homogeneous coordinates.
pub type Transform = [[BigRational; 2]; 2];

pub fn identity_transform() -> Transform {
    [
        [BigRational::one(), BigRational::zero()],
        [BigRational::zero(), BigRational::one()],
    ]
}

impl ComplexityOneData {
    pub fn new(
        points: Vec<ExceptionalPoint>,
        dominating_count: usize,
    ) -> Result<Self, GeometryError> {
        for (i, p) in points.iter().enumerate() {
            if p.multiplicities.is_empty() {
                return Err(GeometryError::EmptyMultiplicities(i));
            }
            if let Some(j) = p.multiplicities.iter().position(|&x| x < 1) {
                return Err(GeometryError::BadMultiplicity(i, j));
            }
            if let Some(j) = points[..i].iter().position(|q| q.coords == p.coords) {
                return Err(GeometryError::DuplicatePoint(j, i));
            }
        }
        Ok(Self {
            points,
            dominating_count,
        })
    }

    pub fn points(&self) -> &[ExceptionalPoint] {
        &self.points
    }

    pub fn dominating_count(&self) -> usize {
        self.dominating_count
    }

    pub fn transform(&self, m: &Transform) -> Result<Self, RingError> {
        let points = self
            .points
            .iter()
            .map(|p| {
                Ok(ExceptionalPoint {
                    coords: p.coords.transform(m)?,
                    multiplicities: p.multiplicities.clone(),
                })
            })
            .collect::<Result<_, RingError>>()?;
        Ok(Self {
            points,
            dominating_count: self.dominating_count,
        })
    }
}

fn q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Moves the first two points to `[1:0]` and `[0:-1]`.
///
/// With `B = [p0 | -p1]` the transform is `B^-1`; `B` is invertible because
/// the points are distinct. Configurations with fewer than two points come
/// back unchanged with the identity.
pub fn normalize_points(data: &ComplexityOneData) -> (ComplexityOneData, Transform) {
    if data.points.len() < 2 {
        return (data.clone(), identity_transform());
    }
    let (p0, p1) = (&data.points[0].coords, &data.points[1].coords);
    let (a, c) = (q(p0.alpha()), q(p0.beta()));
    let (b, d) = (-q(p1.alpha()), -q(p1.beta()));
    let det = &a * &d - &b * &c;
    assert!(!det.is_zero(), "distinct points give an invertible matrix");
    let inv = [[&d / &det, -&b / &det], [-&c / &det, &a / &det]];
    let transformed = data
        .transform(&inv)
        .expect("invertible transform keeps points nonzero");
    (transformed, inv)
}

/// Ring input for `R(A, P0)`: points padded to at least two (with exponent
/// vector `(1)`), then normalized.
pub fn to_ring_input(data: &ComplexityOneData) -> (Vec<ProjectivePoint>, ExponentData) {
    let mut points = data.points.clone();
    let candidates = [(1, 0), (0, -1), (1, 1)];
    let mut candidates = candidates
        .into_iter()
        .map(|(a, b)| ProjectivePoint::from_integers(a, b).expect("nonzero"));
    while points.len() < 2 {
        let pad = candidates
            .find(|c| points.iter().all(|p| &p.coords != c))
            .expect("three candidates cover two slots");
        points.push(ExceptionalPoint {
            coords: pad,
            multiplicities: vec![1],
        });
    }
    let padded = ComplexityOneData {
        points,
        dominating_count: data.dominating_count,
    };
    let (normal, _) = normalize_points(&padded);
    let coords = normal.points.iter().map(|p| p.coords.clone()).collect();
    let vectors = normal
        .points
        .iter()
        .map(|p| p.multiplicities.clone())
        .collect();
    let exponents =
        ExponentData::new(vectors, normal.dominating_count).expect("validated multiplicities");
    (coords, exponents)
}

/// One relation `beta_i a - alpha_i b = lambda_i prod_j s_ij^n_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationU {
    pub point: usize,
    pub alpha: BigInt,
    pub beta: BigInt,
    /// Opaque name of the character `lambda_i`.
    pub character: String,
    pub exponents: Vec<u64>,
}

impl RelationU {
    pub fn render(&self) -> String {
        let lhs = render_linear(&self.beta, "a", &self.alpha, "b");
        let rhs: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .map(|(j, &e)| {
                let s = exceptional_generator(self.point, j);
                if e == 1 {
                    s
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        format!("{lhs} = {}*{}", self.character, rhs.join("*"))
    }
}

/// `x*a - y*b` with unit coefficients suppressed.
fn render_linear(x: &BigInt, a: &str, y: &BigInt, b: &str) -> String {
    let term = |c: &BigInt, v: &str| -> String {
        let c = render_rational(&q(c));
        match c.as_str() {
            "1" => v.to_string(),
            "-1" => format!("-{v}"),
            _ => format!("{c}*{v}"),
        }
    };
    match (x.is_zero(), y.is_zero()) {
        (true, _) => term(&-y, b),
        (_, true) => term(x, a),
        _ => {
            let neg_y = -y;
            let second = term(&neg_y, b);
            match second.strip_prefix('-') {
                Some(rest) => format!("{} - {rest}", term(x, a)),
                None => format!("{} + {second}", term(x, a)),
            }
        }
    }
}

pub fn exceptional_generator(point: usize, j: usize) -> String {
    format!("s[{},{}]", point, j + 1)
}

pub fn dominating_generator(k: usize) -> String {
    format!("s[{}]", k + 1)
}

/// Generators and relations of `Cox^G(X)^U` over `k[G^]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationU {
    pub generators: Vec<String>,
    pub relations: Vec<RelationU>,
    /// `(generator, symbolic degree label)` in `Cl^G(X) x T^`.
    pub degrees: Vec<(String, String)>,
    /// The relations generate the full ideal only when the common degree of
    /// `a` and `b` is torsion free; this is recorded, not verified.
    pub caveat: String,
}

pub const STAR_CAVEAT: &str =
    "relations generate the whole ideal provided the common degree of a and b is torsion free";

pub fn presentation_u(data: &ComplexityOneData) -> PresentationU {
    let mut generators = vec!["a".to_string(), "b".to_string()];
    let mut degrees = vec![
        ("a".to_string(), "w".to_string()),
        ("b".to_string(), "w".to_string()),
    ];
    let mut relations = Vec::new();
    for (i, p) in data.points.iter().enumerate() {
        for j in 0..p.multiplicities.len() {
            let g = exceptional_generator(i, j);
            degrees.push((g.clone(), format!("deg({g})")));
            generators.push(g);
        }
        relations.push(RelationU {
            point: i,
            alpha: p.coords.alpha().clone(),
            beta: p.coords.beta().clone(),
            character: format!("lambda[{i}]"),
            exponents: p.multiplicities.clone(),
        });
    }
    for k in 0..data.dominating_count {
        let g = dominating_generator(k);
        degrees.push((g.clone(), format!("deg({g})")));
        generators.push(g);
    }
    PresentationU {
        generators,
        relations,
        degrees,
        caveat: STAR_CAVEAT.to_string(),
    }
}

/// Whether the flags assert a situation known to give torsion-free common
/// degree for `a, b`. `false` means unknown, not disproved.
pub fn star_condition_hint(flags: &GeometryFlags) -> bool {
    (flags.smooth && flags.complete) || flags.torus_invariants_constant || flags.almost_homogeneous
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::platonic::is_platonic_ring;

    fn pt(a: i64, b: i64) -> ProjectivePoint {
        ProjectivePoint::from_integers(a, b).unwrap()
    }

    fn ep(a: i64, b: i64, mult: &[u64]) -> ExceptionalPoint {
        ExceptionalPoint {
            coords: pt(a, b),
            multiplicities: mult.to_vec(),
        }
    }

    /// Points 0, 1, infinity with multiplicities (3,3).
    fn threes_surface() -> ComplexityOneData {
        ComplexityOneData::new(
            vec![ep(0, 1, &[3, 3]), ep(1, 1, &[3, 3]), ep(1, 0, &[3, 3])],
            0,
        )
        .unwrap()
    }

    #[test]
    fn duplicates_rejected() {
        let err = ComplexityOneData::new(vec![ep(1, 2, &[1]), ep(-2, -4, &[2])], 0).unwrap_err();
        assert_eq!(err, GeometryError::DuplicatePoint(0, 1));
        assert!(ComplexityOneData::new(vec![ep(1, 2, &[])], 0).is_err());
    }

    #[test]
    fn normalize_moves_first_two_points() {
        let data = ComplexityOneData::new(vec![ep(2, 0, &[2]), ep(0, 1, &[3]), ep(1, 1, &[5])], 0)
            .unwrap();
        let (normal, m) = normalize_points(&data);
        assert_eq!(normal.points[0].coords.alpha(), &BigInt::from(1));
        assert_eq!(normal.points[0].coords.beta(), &BigInt::from(0));
        assert_eq!(normal.points[1].coords.alpha(), &BigInt::from(0));
        assert_eq!(normal.points[1].coords.beta(), &BigInt::from(-1));
        // [1:1] -> (1, -1) after B^-1 with B = [[1,0],[0,-1]]
        assert_eq!(normal.points[2].coords, pt(1, -1));
        assert_eq!(normal.points[2].multiplicities, vec![5]);
        // reapplying the transform to the input gives the same output
        assert_eq!(data.transform(&m).unwrap(), normal);
    }

    #[test]
    fn normalize_identity_cases() {
        let data = ComplexityOneData::new(vec![ep(1, 0, &[2]), ep(0, -1, &[3])], 1).unwrap();
        let (normal, m) = normalize_points(&data);
        assert_eq!(m, identity_transform());
        assert_eq!(normal, data);

        let single = ComplexityOneData::new(vec![ep(1, 1, &[2])], 0).unwrap();
        let (normal, m) = normalize_points(&single);
        assert_eq!(m, identity_transform());
        assert_eq!(normal, single);
    }

    #[test]
    fn ring_input_for_threes_surface() {
        let (a, e) = to_ring_input(&threes_surface());
        assert_eq!(a.len(), 3);
        assert_eq!(e.r(), 2);
        assert_eq!(e.vectors(), &[vec![3, 3], vec![3, 3], vec![3, 3]]);
        assert_eq!(e.m(), 0);
        assert!(!is_platonic_ring(&e).platonic);
    }

    #[test]
    fn padding() {
        let none = ComplexityOneData::new(vec![], 2).unwrap();
        let (a, e) = to_ring_input(&none);
        assert_eq!(a, vec![pt(1, 0), pt(0, -1)]);
        assert_eq!(e.vectors(), &[vec![1], vec![1]]);
        assert_eq!(e.m(), 2);
        assert!(is_platonic_ring(&e).platonic);

        let one = ComplexityOneData::new(vec![ep(1, 1, &[2, 2])], 0).unwrap();
        let (a, e) = to_ring_input(&one);
        assert_eq!(e.r(), 1);
        assert_eq!(e.vectors(), &[vec![2, 2], vec![1]]);
        assert_eq!(a[0].alpha(), &BigInt::from(1));
        assert_eq!(a[1], pt(0, 1));

        // [1:0] is taken, so the padding point is [0:-1]
        let at_zero = ComplexityOneData::new(vec![ep(1, 0, &[4])], 0).unwrap();
        let (a, _) = to_ring_input(&at_zero);
        assert_eq!(a, vec![pt(1, 0), pt(0, -1)]);
    }

    #[test]
    fn presentation_of_threes_surface() {
        let p = presentation_u(&threes_surface());
        assert_eq!(p.generators.len(), 8);
        assert_eq!(p.relations.len(), 3);
        assert!(p.relations.iter().all(|r| r.exponents == vec![3, 3]));
        assert_eq!(p.relations[0].render(), "a = lambda[0]*s[0,1]^3*s[0,2]^3");
        assert_eq!(p.relations[2].render(), "-b = lambda[2]*s[2,1]^3*s[2,2]^3");
    }

    #[test]
    fn presentation_edge_cases() {
        let p = presentation_u(&ComplexityOneData::new(vec![], 2).unwrap());
        assert_eq!(p.generators, vec!["a", "b", "s[1]", "s[2]"]);
        assert!(p.relations.is_empty());

        let p = presentation_u(&ComplexityOneData::new(vec![ep(1, 1, &[2])], 0).unwrap());
        assert_eq!(p.relations[0].render(), "a - b = lambda[0]*s[0,1]^2");
        assert_eq!(
            render_linear(&BigInt::from(2), "a", &BigInt::from(-3), "b"),
            "2*a + 3*b"
        );
    }

    #[test]
    fn star_hints() {
        let mut f = GeometryFlags::default();
        assert!(!star_condition_hint(&f));
        f.almost_homogeneous = true;
        assert!(star_condition_hint(&f));
        let f = GeometryFlags {
            smooth: true,
            complete: true,
            ..Default::default()
        };
        assert!(star_condition_hint(&f));
        let f = GeometryFlags {
            smooth: true,
            ..Default::default()
        };
        assert!(!star_condition_hint(&f));
    }
}
