//! The graded trinomial algebra `R(A, P0) = k[T_ij, S_k] / (g_I)`.
//!
//! Input is a list of points `a_0, ..., a_r` of the projective line (the
//! columns of `A`, pairwise independent) and exponent vectors
//! `l_0, ..., l_r` together with a count `m` of free variables. The grading
//! group is `K0 = Z^(n+m) / im(P0^t)` where `P0 = [L 0]` and row `i` of `L`
//! carries `-l_0` in block 0 and `l_i` in block `i`.

mod point;
mod poly;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::abelian::{element_eq, FgAbelianGroup, IntegerMatrix};

pub use point::ProjectivePoint;
pub use poly::{render_rational, Monomial, Polynomial, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("a projective point needs a nonzero coordinate")]
    ZeroPoint,
    #[error("at least one point and one exponent vector are required")]
    Empty,
    #[error("{points} points but {vectors} exponent vectors")]
    LengthMismatch { points: usize, vectors: usize },
    #[error("columns {0} and {1} of A are linearly dependent")]
    PairwiseDependence(usize, usize),
    #[error("exponent vector {0} is empty")]
    EmptyExponentVector(usize),
    #[error("exponent l[{0}][{1}] must be at least 1")]
    BadExponent(usize, usize),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("trinomial indices must satisfy i1 < i2 < i3, got {0:?}")]
    BadTriple([usize; 3]),
    #[error("r = {0}: trinomials need at least three points")]
    NoTrinomials(usize),
}

/// Exponent vectors `l_0, ..., l_r` and the number `m` of free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentData {
    vectors: Vec<Vec<u64>>,
    m: usize,
}

impl ExponentData {
    pub fn new(vectors: Vec<Vec<u64>>, m: usize) -> Result<Self, RingError> {
        if vectors.is_empty() {
            return Err(RingError::Empty);
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.is_empty() {
                return Err(RingError::EmptyExponentVector(i));
            }
            if let Some(j) = v.iter().position(|&x| x < 1) {
                return Err(RingError::BadExponent(i, j));
            }
        }
        Ok(Self { vectors, m })
    }

    pub fn vectors(&self) -> &[Vec<u64>] {
        &self.vectors
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `r`, one less than the number of exponent vectors.
    pub fn r(&self) -> usize {
        self.vectors.len() - 1
    }

    /// `n = n_0 + ... + n_r`.
    pub fn n(&self) -> usize {
        self.vectors.iter().map(Vec::len).sum()
    }

    /// Offset of block `i` inside `Z^(n+m)`.
    fn offset(&self, i: usize) -> usize {
        self.vectors[..i].iter().map(Vec::len).sum()
    }

    /// Position of a variable in the standard basis of `Z^(n+m)`.
    pub fn var_index(&self, var: Var) -> usize {
        match var {
            Var::T(i, j) => self.offset(i) + j,
            Var::S(k) => self.n() + k,
        }
    }

    /// All variables in the fixed order `T[0,1], ..., T[r,n_r], S[1], ..., S[m]`.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self
            .vectors
            .iter()
            .enumerate()
            .flat_map(|(i, v)| (0..v.len()).map(move |j| Var::T(i, j)))
            .collect();
        vars.extend((0..self.m).map(Var::S));
        vars
    }

    /// `T_i^{l_i}`.
    pub fn block_monomial(&self, i: usize) -> Monomial {
        Monomial::new(
            self.vectors[i]
                .iter()
                .enumerate()
                .map(|(j, &e)| (Var::T(i, j), e)),
        )
    }
}

/// The combinatorial data of `R(A, P0)`.
#[derive(Clone, Debug)]
pub struct RingData {
    points: Vec<ProjectivePoint>,
    exponents: ExponentData,
    p0: IntegerMatrix,
    k0: FgAbelianGroup,
    degrees: BTreeMap<Var, Vec<BigInt>>,
}

/// A trinomial `g_I` together with its index triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trinomial {
    pub indices: [usize; 3],
    pub polynomial: Polynomial,
}

/// A combination `sum_i c_i * g_(0,1,i)` over the generating trinomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorCombination {
    coefficients: BTreeMap<usize, BigRational>,
}

impl GeneratorCombination {
    fn generator(i: usize) -> Self {
        let mut c = Self::default();
        c.coefficients.insert(i, BigRational::one());
        c
    }

    fn axpy(&mut self, scale: &BigRational, other: &Self) {
        for (i, c) in &other.coefficients {
            let slot = self
                .coefficients
                .entry(*i)
                .or_insert_with(BigRational::zero);
            *slot += scale * c;
        }
        self.coefficients.retain(|_, c| !c.is_zero());
    }

    /// Nonzero coefficients keyed by the third index of `g_(0,1,i)`.
    pub fn coefficients(&self) -> &BTreeMap<usize, BigRational> {
        &self.coefficients
    }

    /// Sum of the scaled generators as a polynomial.
    pub fn expand(&self, ring: &RingData) -> Polynomial {
        self.coefficients
            .iter()
            .fold(Polynomial::zero(), |acc, (&i, c)| {
                let g = ring.trinomial([0, 1, i]).expect("generator index valid");
                &acc + &g.polynomial.scale(c)
            })
    }
}

impl std::fmt::Display for GeneratorCombination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .map(|(i, c)| format!("({})*g(0,1,{i})", render_rational(c)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl RingData {
    /// Builds `P0`, `K0` and the generator degrees.
    pub fn build(points: Vec<ProjectivePoint>, exponents: ExponentData) -> Result<Self, RingError> {
        if points.len() != exponents.vectors().len() {
            return Err(RingError::LengthMismatch {
                points: points.len(),
                vectors: exponents.vectors().len(),
            });
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i].det(&points[j]).is_zero() {
                    return Err(RingError::PairwiseDependence(i, j));
                }
            }
        }
        let p0 = relation_matrix(&exponents);
        Ok(Self::assemble(points, exponents, p0))
    }

    fn assemble(points: Vec<ProjectivePoint>, exponents: ExponentData, p0: IntegerMatrix) -> Self {
        let k0 = FgAbelianGroup::from_presentation(p0.transpose());
        let width = exponents.n() + exponents.m();
        let degrees = exponents
            .variables()
            .into_iter()
            .map(|v| {
                let mut e = vec![BigInt::zero(); width];
                e[exponents.var_index(v)] = BigInt::one();
                (v, e)
            })
            .collect();
        Self {
            points,
            exponents,
            p0,
            k0,
            degrees,
        }
    }

    /// Replaces `P0` by an arbitrary `r x (n+m)` matrix and regrades. Meant
    /// for exercising [`RingData::verify_homogeneous`] on broken gradings.
    pub fn with_relation_matrix(self, p0: IntegerMatrix) -> Self {
        Self::assemble(self.points, self.exponents, p0)
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn exponents(&self) -> &ExponentData {
        &self.exponents
    }

    pub fn p0(&self) -> &IntegerMatrix {
        &self.p0
    }

    pub fn k0(&self) -> &FgAbelianGroup {
        &self.k0
    }

    /// Degrees `Q0(e)` as ambient vectors of `Z^(n+m)`.
    pub fn degrees(&self) -> &BTreeMap<Var, Vec<BigInt>> {
        &self.degrees
    }

    pub fn r(&self) -> usize {
        self.exponents.r()
    }

    fn check_index(&self, i: usize) -> Result<(), RingError> {
        if i > self.r() {
            return Err(RingError::IndexOutOfRange {
                index: i,
                max: self.r(),
            });
        }
        Ok(())
    }

    /// `alpha_ij = det(a_i, a_j)` on the stored representatives.
    pub fn alpha(&self, i: usize, j: usize) -> Result<BigRational, RingError> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(BigRational::from_integer(
            self.points[i].det(&self.points[j]),
        ))
    }

    fn a(&self, i: usize, j: usize) -> BigRational {
        BigRational::from_integer(self.points[i].det(&self.points[j]))
    }

    /// All triples `i1 < i2 < i3`, in lexicographic order.
    pub fn triples(&self) -> Vec<[usize; 3]> {
        let n = self.r() + 1;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    out.push([i, j, k]);
                }
            }
        }
        out
    }

    fn check_triple(&self, idx: [usize; 3]) -> Result<(), RingError> {
        if self.r() < 2 {
            return Err(RingError::NoTrinomials(self.r()));
        }
        for &i in &idx {
            self.check_index(i)?;
        }
        if !(idx[0] < idx[1] && idx[1] < idx[2]) {
            return Err(RingError::BadTriple(idx));
        }
        Ok(())
    }

    /// `g_I = a(i2,i3) T_i1^l_i1 - a(i1,i3) T_i2^l_i2 + a(i1,i2) T_i3^l_i3`,
    /// the Laplace expansion of the defining 3x3 determinant.
    pub fn trinomial(&self, idx: [usize; 3]) -> Result<Trinomial, RingError> {
        self.check_triple(idx)?;
        Ok(Trinomial {
            indices: idx,
            polynomial: self.determinant_trinomial(idx[0], idx[1], idx[2]),
        })
    }

    /// The defining determinant for any three distinct indices, in the given
    /// order (alternating in its arguments).
    pub fn determinant_trinomial(&self, i: usize, j: usize, k: usize) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(self.a(j, k), self.exponents.block_monomial(i));
        p.add_term(-self.a(i, k), self.exponents.block_monomial(j));
        p.add_term(self.a(i, j), self.exponents.block_monomial(k));
        p
    }

    /// K0-degree of a monomial as an ambient vector.
    pub fn monomial_degree(&self, m: &Monomial) -> Vec<BigInt> {
        let width = self.exponents.n() + self.exponents.m();
        let mut deg = vec![BigInt::zero(); width];
        for (v, e) in m.exponents() {
            let unit = &self.degrees[v];
            for (d, u) in deg.iter_mut().zip(unit) {
                *d += u * BigInt::from(*e);
            }
        }
        deg
    }

    /// Whether each `g_I` has all its monomials in one K0-degree.
    pub fn verify_homogeneous(&self) -> bool {
        if self.r() < 2 {
            return true;
        }
        self.triples().into_iter().all(|idx| {
            let g = self.trinomial(idx).expect("valid triple");
            let degs: Vec<Vec<BigInt>> = g
                .polynomial
                .terms()
                .map(|(m, _)| self.monomial_degree(m))
                .collect();
            degs.windows(2)
                .all(|w| element_eq(&self.k0, &w[0], &w[1]).expect("ambient length"))
        })
    }

    /// `alpha_jk g_(i,j,l) - alpha_jl g_(i,j,k) - alpha_ij g_(j,k,l)`, which
    /// vanishes identically for distinct indices (a Plücker relation among
    /// the columns of `A`).
    pub fn exchange_residual(&self, i: usize, j: usize, k: usize, l: usize) -> Polynomial {
        let lhs = self.determinant_trinomial(i, j, l).scale(&self.a(j, k));
        let t1 = self.determinant_trinomial(i, j, k).scale(&self.a(j, l));
        let t2 = self.determinant_trinomial(j, k, l).scale(&self.a(i, j));
        &(&lhs - &t1) - &t2
    }

    /// Writes `g_I` as a rational combination of the generators
    /// `g_(0,1,i)`, `2 <= i <= r`.
    ///
    /// Uses the exchange relation `a_jk g_ijl = a_jl g_ijk + a_ij g_jkl`
    /// (valid for any distinct indices, with `g` alternating):
    ///
    /// * `(0,1,s)` is a generator;
    /// * `(0,q,s)` comes from indices `(1,0,q,s)`, dividing by `a_10`;
    /// * `(p,q,s)` with `p >= 1` comes from `(0,p,q,s)`, dividing by `a_0p`.
    ///
    /// All divisors are nonzero because the columns of `A` are pairwise
    /// independent.
    pub fn expand_in_generating_set(
        &self,
        idx: [usize; 3],
    ) -> Result<GeneratorCombination, RingError> {
        self.check_triple(idx)?;
        Ok(self.expand_sorted(idx[0], idx[1], idx[2]))
    }

    fn expand_sorted(&self, p: usize, q: usize, s: usize) -> GeneratorCombination {
        let mut out = GeneratorCombination::default();
        match (p, q) {
            (0, 1) => return GeneratorCombination::generator(s),
            (0, _) => {
                // a_0q g_(1,0,s) = a_0s g_(1,0,q) + a_10 g_(0,q,s)
                // => g_(0,q,s) = (a_0q g_(0,1,s) - a_0s g_(0,1,q)) / a_01
                let inv = self.a(0, 1).recip();
                out.axpy(&(self.a(0, q) * &inv), &GeneratorCombination::generator(s));
                out.axpy(&(-self.a(0, s) * &inv), &GeneratorCombination::generator(q));
            }
            _ => {
                // a_pq g_(0,p,s) = a_ps g_(0,p,q) + a_0p g_(p,q,s)
                let inv = self.a(0, p).recip();
                out.axpy(&(self.a(p, q) * &inv), &self.expand_sorted(0, p, s));
                out.axpy(&(-self.a(p, s) * &inv), &self.expand_sorted(0, p, q));
            }
        }
        out
    }
}

/// `P0 = [L 0]`: row `i - 1` holds `-l_0` in block 0 and `l_i` in block `i`.
pub fn relation_matrix(exponents: &ExponentData) -> IntegerMatrix {
    let r = exponents.r();
    let width = exponents.n() + exponents.m();
    let mut p0 = IntegerMatrix::zeros(r, width);
    for row in 0..r {
        let i = row + 1;
        for (j, &e) in exponents.vectors()[0].iter().enumerate() {
            p0[(row, exponents.var_index(Var::T(0, j)))] = -BigInt::from(e);
        }
        for (j, &e) in exponents.vectors()[i].iter().enumerate() {
            p0[(row, exponents.var_index(Var::T(i, j)))] = BigInt::from(e);
        }
    }
    p0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: i64, b: i64) -> ProjectivePoint {
        ProjectivePoint::from_integers(a, b).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn bi(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn three_points_squared() -> RingData {
        RingData::build(
            vec![pt(1, 0), pt(0, -1), pt(1, 1)],
            ExponentData::new(vec![vec![2], vec![2], vec![2]], 0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn build_two_points() {
        let ring = RingData::build(
            vec![pt(1, 0), pt(0, -1)],
            ExponentData::new(vec![vec![1], vec![1]], 0).unwrap(),
        )
        .unwrap();
        assert_eq!(
            ring.p0(),
            &IntegerMatrix::from_rows(&[vec![-1, 1]]).unwrap()
        );
        assert_eq!(ring.k0().free_rank(), 1);
        assert!(ring.k0().invariant_factors().is_empty());
        assert!(ring.verify_homogeneous());
    }

    #[test]
    fn build_rejects_dependent_columns() {
        let err = RingData::build(
            vec![pt(1, 0), pt(1, 0)],
            ExponentData::new(vec![vec![3], vec![1, 2]], 1).unwrap(),
        )
        .unwrap_err();
        assert_eq!(err, RingError::PairwiseDependence(0, 1));
        let err = RingData::build(
            vec![pt(2, 4), pt(0, 1), pt(-1, -2)],
            ExponentData::new(vec![vec![1]; 3], 0).unwrap(),
        )
        .unwrap_err();
        assert_eq!(err, RingError::PairwiseDependence(0, 2));
    }

    #[test]
    fn bad_exponents() {
        assert_eq!(
            ExponentData::new(vec![vec![1], vec![2, 0]], 0).unwrap_err(),
            RingError::BadExponent(1, 1)
        );
        assert_eq!(ExponentData::new(vec![], 0).unwrap_err(), RingError::Empty);
    }

    #[test]
    fn k0_of_squares() {
        // Z^3 / im [[-2,-2],[2,0],[0,2]]: minor gcds 2 and 4, so Z ⊕ Z/2 ⊕ Z/2
        let ring = three_points_squared();
        assert_eq!(
            ring.p0(),
            &IntegerMatrix::from_rows(&[vec![-2, 2, 0], vec![-2, 0, 2]]).unwrap()
        );
        assert_eq!(ring.k0().free_rank(), 1);
        assert_eq!(ring.k0().invariant_factors(), bi(&[2, 2]));
    }

    #[test]
    fn alpha_values() {
        let ring = three_points_squared();
        assert_eq!(ring.alpha(0, 1).unwrap(), q(-1));
        assert_eq!(ring.alpha(1, 1).unwrap(), q(0));
        assert_eq!(ring.alpha(0, 2).unwrap(), q(1));
        assert!(ring.alpha(0, 3).is_err());
    }

    #[test]
    fn trinomial_of_squares() {
        let ring = three_points_squared();
        let g = ring.trinomial([0, 1, 2]).unwrap();
        assert_eq!(g.polynomial.to_string(), "T[0,1]^2 - T[1,1]^2 - T[2,1]^2");
        assert_eq!(g.polynomial.len(), 3);
        assert!(ring.trinomial([0, 2, 1]).is_err());
    }

    #[test]
    fn middle_coefficient_is_negated_alpha() {
        let ring = three_points_squared();
        let g = ring.trinomial([0, 1, 2]).unwrap();
        let middle = ring.exponents().block_monomial(1);
        assert_eq!(
            g.polynomial.coefficient(&middle),
            -ring.alpha(0, 2).unwrap()
        );
    }

    #[test]
    fn no_trinomials_below_three_points() {
        let ring = RingData::build(
            vec![pt(1, 0), pt(0, -1)],
            ExponentData::new(vec![vec![2, 3], vec![5]], 2).unwrap(),
        )
        .unwrap();
        assert_eq!(
            ring.trinomial([0, 1, 2]).unwrap_err(),
            RingError::NoTrinomials(1)
        );
        assert!(ring.verify_homogeneous());
        assert_eq!(ring.k0().free_rank(), 4);
    }

    #[test]
    fn corrupted_grading_is_detected() {
        let ring = three_points_squared();
        let broken = IntegerMatrix::from_rows(&[vec![-2, 1, 0], vec![-2, 0, 2]]).unwrap();
        assert!(!ring.with_relation_matrix(broken).verify_homogeneous());
    }

    #[test]
    fn expansion_of_generator_is_itself() {
        let ring = three_points_squared();
        let c = ring.expand_in_generating_set([0, 1, 2]).unwrap();
        assert_eq!(c.coefficients().len(), 1);
        assert_eq!(c.coefficients()[&2], q(1));
    }

    #[test]
    fn expansion_r3() {
        let ring = RingData::build(
            vec![pt(1, 0), pt(0, -1), pt(1, 1), pt(1, 2)],
            ExponentData::new(vec![vec![2], vec![3], vec![1, 1], vec![4]], 1).unwrap(),
        )
        .unwrap();
        // g_123 = (a_12 g_013 - a_13 g_012) / a_01
        let (a01, a12, a13) = (
            ring.alpha(0, 1).unwrap(),
            ring.alpha(1, 2).unwrap(),
            ring.alpha(1, 3).unwrap(),
        );
        let c = ring.expand_in_generating_set([1, 2, 3]).unwrap();
        assert_eq!(c.coefficients()[&3], &a12 / &a01);
        assert_eq!(c.coefficients()[&2], -&a13 / &a01);
        assert_eq!(
            c.expand(&ring),
            ring.trinomial([1, 2, 3]).unwrap().polynomial
        );
        for idx in ring.triples() {
            let c = ring.expand_in_generating_set(idx).unwrap();
            assert_eq!(c.expand(&ring), ring.trinomial(idx).unwrap().polynomial);
        }
    }

    #[test]
    fn exchange_relation_vanishes() {
        let ring = RingData::build(
            vec![pt(1, 0), pt(0, -1), pt(1, 1), pt(3, -2), pt(5, 7)],
            ExponentData::new(vec![vec![1], vec![2], vec![3], vec![1, 2], vec![2]], 0).unwrap(),
        )
        .unwrap();
        for [i, j, k] in ring.triples() {
            for l in k + 1..=ring.r() {
                assert!(ring.exchange_residual(i, j, k, l).is_zero());
            }
        }
    }
}
