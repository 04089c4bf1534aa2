//! Exact feasibility of `A x = b, x >= 0` by the two-phase simplex method's
//! first phase, over rationals, with Bland's anti-cycling rule.

use num_traits::{Signed, Zero};

use crate::lattice::Q;
use crate::linalg::Matrix;

/// A non-negative solution of `a x = b`, or `None` when there is none.
pub fn feasible(a: &Matrix, b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    let k = a.first().map_or(0, Vec::len);
    assert_eq!(b.len(), m, "right-hand side length");
    // Tableau columns: k originals, m artificials, then the right-hand side.
    let width = k + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r: Vec<Q> = row
            .iter()
            .map(|x| if flip { -x } else { x.clone() })
            .collect();
        r.extend((0..m).map(|j| {
            if j == i {
                Q::from_integer(1.into())
            } else {
                Q::zero()
            }
        }));
        r.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (k..k + m).collect();
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut z = vec![Q::zero(); width];
    for r in &t {
        for j in 0..k {
            z[j] -= &r[j];
        }
        z[width - 1] -= &r[width - 1];
    }
    while let Some(enter) = (0..k + m).find(|&j| z[j].is_negative()) {
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let (row, _) = leave.expect("phase-one objective is bounded");
        let piv = t[row][enter].clone();
        for x in t[row].iter_mut() {
            *x /= &piv;
        }
        let pivot_row = t[row].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != row && !r[enter].is_zero() {
                let f = r[enter].clone();
                for (x, p) in r.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if !z[enter].is_zero() {
            let f = z[enter].clone();
            for (x, p) in z.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        basis[row] = enter;
    }
    if !z[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); k];
    for (i, &bj) in basis.iter().enumerate() {
        if bj < k {
            x[bj] = t[i][width - 1].clone();
        }
    }
    Some(x)
}
