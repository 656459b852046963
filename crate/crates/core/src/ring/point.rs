use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::RingError;

/// A point `[alpha : beta]` of the projective line over `Q`.
///
/// The stored representative is the primitive integer vector obtained by
/// clearing denominators and dividing out the content. Rescaling is only ever
/// by positive factors, so the sign the caller supplied survives; this keeps
/// determinants such as `det([1:0], [0:-1]) = -1` meaningful. Equality and
/// hashing use [`ProjectivePoint::canonical`], where the first nonzero
/// coordinate is positive.
#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    alpha: BigInt,
    beta: BigInt,
}

impl ProjectivePoint {
    pub fn new(alpha: BigRational, beta: BigRational) -> Result<Self, RingError> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(RingError::ZeroPoint);
        }
        let lcm = alpha.denom().lcm(beta.denom());
        let a = alpha.numer() * (&lcm / alpha.denom());
        let b = beta.numer() * (&lcm / beta.denom());
        Ok(Self::primitive(a, b))
    }

    pub fn from_integers(
        alpha: impl Into<BigInt>,
        beta: impl Into<BigInt>,
    ) -> Result<Self, RingError> {
        let (a, b) = (alpha.into(), beta.into());
        if a.is_zero() && b.is_zero() {
            return Err(RingError::ZeroPoint);
        }
        Ok(Self::primitive(a, b))
    }

    fn primitive(a: BigInt, b: BigInt) -> Self {
        let g = a.gcd(&b);
        Self {
            alpha: a / &g,
            beta: b / &g,
        }
    }

    pub fn alpha(&self) -> &BigInt {
        &self.alpha
    }

    pub fn beta(&self) -> &BigInt {
        &self.beta
    }

    /// Sign-normalized representative: first nonzero coordinate positive.
    pub fn canonical(&self) -> (BigInt, BigInt) {
        let flip = if self.alpha.is_zero() {
            self.beta.is_negative()
        } else {
            self.alpha.is_negative()
        };
        if flip {
            (-&self.alpha, -&self.beta)
        } else {
            (self.alpha.clone(), self.beta.clone())
        }
    }

    /// `det(self, other)` with the two stored representatives as columns.
    pub fn det(&self, other: &ProjectivePoint) -> BigInt {
        &self.alpha * &other.beta - &self.beta * &other.alpha
    }

    /// Image under the linear map `[[a, b], [c, d]]`, rescaled positively to
    /// a primitive integer vector.
    pub fn transform(&self, m: &[[BigRational; 2]; 2]) -> Result<Self, RingError> {
        let x = BigRational::from_integer(self.alpha.clone());
        let y = BigRational::from_integer(self.beta.clone());
        Self::new(&m[0][0] * &x + &m[0][1] * &y, &m[1][0] * &x + &m[1][1] * &y)
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for ProjectivePoint {}

impl Hash for ProjectivePoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.alpha, self.beta)
    }
}
