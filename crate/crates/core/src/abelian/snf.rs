use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegerMatrix;

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, its diagonal
/// entries nonnegative and forming a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// The `min(rows, cols)` diagonal entries of `D`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero diagonal entries; these always come first.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    /// Basis of the integer kernel of the source matrix: the columns of `V`
    /// past the rank.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.v.cols())
            .map(|j| self.v.column(j))
            .collect()
    }
}

/// Smith normal form by pivoted row and column reduction, keeping the
/// transformation matrices.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&d, t) else {
                return SmithDecomposition { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // pivot must divide the whole remaining block
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, d, v }
}

fn smallest_nonzero(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| &x < b) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &IntegerMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntegerMatrix::identity(2));
        assert_eq!(s.d, IntegerMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        let s = check(&m);
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntegerMatrix::zeros(2, 3));
        assert_eq!(s.d, IntegerMatrix::zeros(2, 3));
        assert_eq!(s.rank(), 0);
        assert_eq!(s.kernel_basis().len(), 3);
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (2, 0), (0, 3)] {
            let s = check(&IntegerMatrix::zeros(r, c));
            assert_eq!(s.u.rows(), r);
            assert_eq!(s.v.rows(), c);
        }
    }

    #[test]
    fn coprime_diagonal_merges() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(check(&m).diagonal(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn kernel_basis_is_annihilated() {
        let m = IntegerMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        let s = check(&m);
        let kernel = s.kernel_basis();
        assert_eq!(kernel.len(), 2);
        for k in kernel {
            assert!(m.mul_vec(&k).unwrap().iter().all(Zero::is_zero));
        }
    }
}
