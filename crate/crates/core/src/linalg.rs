//! Dense exact linear algebra over the rationals.
//!
//! Matrices are row-major `Vec<Vec<Q>>`. Sizes in this crate never exceed a
//! few dozen rows, so plain Gauss-Jordan elimination is all that is needed.

use num_traits::{One, Zero};

use crate::lattice::Q;

pub type Matrix = Vec<Vec<Q>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}

/// Inverse of a square matrix, or `None` when it is singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| {
            debug_assert_eq!(row.len(), n);
            row.iter().cloned().chain(id).collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let (src, dst) = if r < col {
                    let (lo, hi) = a.split_at_mut(col);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&lo[col], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &f * s;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn determinant(m: &Matrix) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col];
        eliminate_below(&mut a, col, col);
    }
    det
}

/// Clears column `col` below row `pivot_row`; `a[pivot_row][col]` is nonzero.
fn eliminate_below(a: &mut Matrix, pivot_row: usize, col: usize) {
    let (top, bottom) = a.split_at_mut(pivot_row + 1);
    let pivot = &top[pivot_row];
    for row in bottom {
        if !row[col].is_zero() {
            let f = &row[col] / &pivot[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x -= &f * p;
            }
        }
    }
}

pub fn mat_vec(m: &Matrix, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// Rank of a (possibly rectangular) matrix.
pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        eliminate_below(&mut a, r, c);
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn inverse_of_a2_cartan() {
        let c = vec![vec![q(2, 1), q(-1, 1)], vec![q(-1, 1), q(2, 1)]];
        let inv = inverse(&c).unwrap();
        assert_eq!(inv, vec![vec![q(2, 3), q(1, 3)], vec![q(1, 3), q(2, 3)]]);
        assert_eq!(determinant(&c), q(3, 1));
    }

    #[test]
    fn singular_detected() {
        let m = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert!(inverse(&m).is_none());
        assert_eq!(determinant(&m), q(0, 1));
        assert_eq!(rank(&m), 1);
    }
}
