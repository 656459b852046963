use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A variable of `k[T_ij, S_k]`. Indices are zero-based; rendering uses
/// `T[i,j+1]` and `S[k+1]` so the first variable in each block reads 1.
///
/// The derived order is the fixed variable order: all `T` before all `S`,
/// `T` sorted by `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T(usize, usize),
    S(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T(i, j) => write!(f, "T[{},{}]", i, j + 1),
            Var::S(k) => write!(f, "S[{}]", k + 1),
        }
    }
}

/// Exponent map with no zero exponents, sorted by variable order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u64)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn new(exponents: impl IntoIterator<Item = (Var, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in exponents {
            *map.entry(v).or_insert(0) += e;
        }
        Self(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn exponents(&self) -> &[(Var, u64)] {
        &self.0
    }

    pub fn degree_of(&self, var: Var) -> u64 {
        self.0
            .iter()
            .find(|(v, _)| *v == var)
            .map_or(0, |&(_, e)| e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, (v, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial with exact rational coefficients in canonical form: terms keyed
/// by monomial (sorted), no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(coeff: BigRational, monomial: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, monomial);
        p
    }

    pub fn add_term(&mut self, coeff: BigRational, monomial: Monomial) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> BigRational {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul<&Polynomial> for &BigRational {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        rhs.scale(self)
    }
}

/// Renders a rational as `p` or `p/q` (reduced, sign on the numerator).
pub fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text form, e.g. `T[0,1]^2 - T[1,1]^2 - 1/2*T[2,1]^2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let is_const = m.exponents().is_empty();
            if abs.is_one() && !is_const {
                write!(f, "{m}")?;
            } else if is_const {
                write!(f, "{}", render_rational(&abs))?;
            } else {
                write!(f, "{}*{m}", render_rational(&abs))?;
            }
        }
        Ok(())
    }
}
