use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::AbelianError;

/// A sublattice of `Z^dim` stored by its (row-style, fully reduced) Hermite
/// normal form basis.
///
/// Basis vectors have strictly increasing pivot positions, positive pivots,
/// and entries above each pivot reduced into `[0, pivot)`. The basis is
/// therefore unique, so two lattices are equal iff their bases are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn from_generators(dim: usize, generators: &[Vec<BigInt>]) -> Result<Self, AbelianError> {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != dim {
                return Err(AbelianError::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
            if g.iter().any(|x| !x.is_zero()) {
                rows.push(g.clone());
            }
        }

        let mut top = 0;
        for col in 0..dim {
            if top == rows.len() {
                break;
            }
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                if rows[top][col].is_zero() {
                    rows.swap(top, i);
                    continue;
                }
                let x = rows[top][col].clone();
                let y = rows[i][col].clone();
                let eg = x.extended_gcd(&y);
                let (s, t) = (eg.x, eg.y);
                let (xg, yg) = (&x / &eg.gcd, &y / &eg.gcd);
                let (a, b) = (rows[top].clone(), rows[i].clone());
                rows[top] = a.iter().zip(&b).map(|(p, q)| &s * p + &t * q).collect();
                rows[i] = a.iter().zip(&b).map(|(p, q)| &xg * q - &yg * p).collect();
            }
            if rows[top][col].is_zero() {
                continue;
            }
            if rows[top][col].is_negative() {
                for x in rows[top].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot = rows[top][col].clone();
            for k in 0..top {
                let q = rows[k][col].div_floor(&pivot);
                if q.is_zero() {
                    continue;
                }
                let pivot_row = rows[top].clone();
                for (x, p) in rows[k].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
            top += 1;
        }
        rows.truncate(top);
        Ok(Self { dim, basis: rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, AbelianError> {
        if v.len() != self.dim {
            return Err(AbelianError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut x = v.to_vec();
        for b in &self.basis {
            let c = b
                .iter()
                .position(|e| !e.is_zero())
                .expect("nonzero basis row");
            let (q, r) = x[c].div_rem(&b[c]);
            if !r.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi -= &q * bi;
                }
            }
        }
        Ok(x.iter().all(Zero::is_zero))
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.dim == other.dim
            && self
                .basis
                .iter()
                .all(|b| other.contains(b).expect("same dimension"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_is_canonical() {
        let a = Lattice::from_generators(2, &[v(&[2, 0]), v(&[0, 3])]).unwrap();
        let b = Lattice::from_generators(2, &[v(&[2, 3]), v(&[4, 3]), v(&[0, 6])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[v(&[2, 0]), v(&[0, 3])]);
    }

    #[test]
    fn membership() {
        let l = Lattice::from_generators(2, &[v(&[2, 0])]).unwrap();
        assert!(l.contains(&v(&[4, 0])).unwrap());
        assert!(!l.contains(&v(&[1, 0])).unwrap());
        assert!(!l.contains(&v(&[0, 2])).unwrap());
        assert!(l.contains(&v(&[0])).is_err());
    }

    #[test]
    fn zero_lattice() {
        let l = Lattice::from_generators(3, &[v(&[0, 0, 0])]).unwrap();
        assert_eq!(l.rank(), 0);
        assert!(l.contains(&v(&[0, 0, 0])).unwrap());
        assert!(!l.contains(&v(&[0, 1, 0])).unwrap());
    }
}
