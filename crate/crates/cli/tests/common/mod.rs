//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's algorithms.

#![allow(dead_code)]

use std::path::PathBuf;

pub const FIGURE_HEADER: &str = "# mu_x = (mu,(1,-1,0))/2, mu_y = (mu,(1,1,-2))/6, so mu = mu_x*(1,-1,0) + mu_y*(1,1,-2); the basis is orthogonal with squared lengths 2 and 6";

pub fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/figure_su21.csv")
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn frac(n: i64, d: i64) -> String {
    let g = gcd(n, d);
    let (n, d) = (n / g, d / g);
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

/// Orderings `(a, b, c)` of the coordinates with 1 before 2: the positive
/// systems of `A2` containing `e1 - e2`.
fn chambers() -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let o = [a, b, c];
                if a != b && b != c && a != c {
                    let pos = |i: usize| o.iter().position(|&x| x == i).unwrap();
                    if pos(0) < pos(1) {
                        out.push(o);
                    }
                }
            }
        }
    }
    out
}

fn dominant(x: [i64; 3], o: [usize; 3]) -> bool {
    x[o[0]] >= x[o[1]] && x[o[1]] >= x[o[2]]
}

fn sub(x: [i64; 3], y: [i64; 3]) -> [i64; 3] {
    [x[0] - y[0], x[1] - y[1], x[2] - y[2]]
}

/// Every `3 w 2 rho_n`, as `(x1, x2)` (the third coordinate is `-x1-x2`).
fn hull_points() -> Vec<(i64, i64)> {
    let mut pts = Vec::new();
    for o in chambers() {
        // Non-compact roots are +-(e_i - e_3); keep those positive for `o`.
        let mut two_rho_n = [0i64; 3];
        for i in 0..2 {
            let pos = |k: usize| o.iter().position(|&x| x == k).unwrap();
            let (hi, lo) = if pos(i) < pos(2) { (i, 2) } else { (2, i) };
            two_rho_n[hi] += 3;
            two_rho_n[lo] -= 3;
        }
        for p in [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ] {
            pts.push((two_rho_n[p[0]], two_rho_n[p[1]]));
        }
    }
    pts.sort();
    pts.dedup();
    pts
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// A point lies in the convex hull of `pts` iff it is on the inner side of
/// every supporting line through two of them.
fn in_hull(pts: &[(i64, i64)], p: (i64, i64)) -> bool {
    for &u in pts {
        for &v in pts {
            if u == v {
                continue;
            }
            if pts.iter().all(|&w| cross(u, v, w) >= 0) && cross(u, v, p) < 0 {
                return false;
            }
        }
    }
    true
}

/// The figure CSV computed by brute force on `3 mu`.
pub fn su21_figure_oracle() -> String {
    let hull = hull_points();
    let max_norm = hull
        .iter()
        .map(|&(a, b)| a * a + b * b + (a + b) * (a + b))
        .max()
        .unwrap();
    // |3 mu|^2 <= (3/2)^2 max |3 v|^2.
    let limit4 = 9 * max_norm;
    let two_rho_c = [3, -3, 0];
    let xi = |o: [usize; 3], i: usize| {
        let mut x = [0i64; 3];
        if i == 0 {
            x[o[0]] = 2;
            x[o[1]] = -1;
            x[o[2]] = -1;
        } else {
            x[o[0]] = 1;
            x[o[1]] = 1;
            x[o[2]] = -2;
        }
        x
    };
    let mut rows = Vec::new();
    for m1 in -40i64..=40 {
        for m2 in -40i64..=40 {
            let m = [m1, m2, -m1 - m2];
            let norm = m.iter().map(|x| x * x).sum::<i64>();
            if 4 * norm > limit4 || (m1 - m2) % 3 != 0 || (m2 - m[2]) % 3 != 0 || m1 < m2 {
                continue;
            }
            let usmall = in_hull(&hull, (m1, m2));
            let nondecreasable = chambers().into_iter().any(|o| {
                let shifted = [
                    m[0] + two_rho_c[0],
                    m[1] + two_rho_c[1],
                    m[2] + two_rho_c[2],
                ];
                dominant(shifted, o)
                    && (0..2).all(|i| {
                        let d = sub(m, xi(o, i));
                        d[0] < d[1] || !dominant(sub(shifted, xi(o, i)), o)
                    })
            });
            let key = (m1 + m2 - 2 * m[2], 3 * (m1 - m2));
            rows.push((key, m1, m2, usmall, nondecreasable));
        }
    }
    rows.sort();
    let mut out = format!("{FIGURE_HEADER}\nmu_x,mu_y,usmall,nondecreasable\n");
    for (_, m1, m2, u, n) in rows {
        let m3 = -m1 - m2;
        out.push_str(&format!(
            "{},{},{u},{n}\n",
            frac(m1 - m2, 6),
            frac(m1 + m2 - 2 * m3, 18)
        ));
    }
    out
}
