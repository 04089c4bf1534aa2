//! The `su(2,1)` picture: every integral, k-dominant weight of the
//! trace-zero plane within 1.5 times the hull radius, tagged u-small and
//! non-decreasable.

use anyhow::bail;
use ktypes_core::lattice::{q, qr};
use ktypes_core::nondecr::is_nondecreasable;
use ktypes_core::smallness::is_usmall;
use ktypes_core::{Group, GroupSpec, Weight, Q};
use serde::Serialize;

/// Header comment for the CSV rendering.
pub const BASIS_NOTE: &str = "mu_x = (mu,(1,-1,0))/2, mu_y = (mu,(1,1,-2))/6, so mu = mu_x*(1,-1,0) + mu_y*(1,1,-2); the basis is orthogonal with squared lengths 2 and 6";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FigurePoint {
    pub mu: Weight,
    #[serde(with = "ktypes_core::lattice::qser")]
    pub mu_x: Q,
    #[serde(with = "ktypes_core::lattice::qser")]
    pub mu_y: Q,
    pub usmall: bool,
    pub nondecreasable: bool,
}

/// Coordinates of a trace-zero weight in the basis of [`BASIS_NOTE`].
pub fn plane_coordinates(mu: &Weight) -> (Q, Q) {
    let b1 = Weight::from_ints(&[1, -1, 0]);
    let b2 = Weight::from_ints(&[1, 1, -2]);
    (mu.dot(&b1) * qr(1, 2), mu.dot(&b2) * qr(1, 6))
}

/// Largest `k >= 0` with `k^2 <= x`.
fn floor_sqrt(x: &Q) -> i64 {
    let mut k = 0i64;
    while q((k + 1) * (k + 1)) <= *x {
        k += 1;
    }
    k
}

pub fn figure_points(group: &Group) -> anyhow::Result<Vec<FigurePoint>> {
    if group.spec != (GroupSpec::Su { p: 2, q: 1 }) {
        bail!(
            "figure is defined for su:2,1 only (got {})",
            group.spec.label()
        );
    }
    let hull = group.hull();
    let radius2 = hull
        .vertices
        .iter()
        .map(Weight::norm2)
        .max()
        .expect("the hull has a vertex")
        * qr(9, 4);
    let f0 = &group.frames[0];
    // |pair(mu, alpha_i)| <= |mu| |alpha_i^vee| bounds the coordinates.
    let bounds: Vec<i64> = (0..f0.rank())
        .map(|i| floor_sqrt(&(&radius2 * q(4) / f0.g_simples.norm2(i))))
        .collect();
    let mut points = Vec::new();
    for a in -bounds[0]..=bounds[0] {
        for b in -bounds[1]..=bounds[1] {
            let mu = f0.from_fw_coordinates(&[q(a), q(b)])?;
            if mu.norm2() > radius2 || !f0.is_k_dominant(&mu)? {
                continue;
            }
            let mut nondecreasable = false;
            for f in &group.frames {
                if f.is_g_dominant(&(&mu + &f.two_rho_c()))? {
                    nondecreasable |= is_nondecreasable(f, &mu)?.nondecreasable;
                }
            }
            let (mu_x, mu_y) = plane_coordinates(&mu);
            points.push(FigurePoint {
                usmall: is_usmall(group, &mu)?.verdict,
                mu,
                mu_x,
                mu_y,
                nondecreasable,
            });
        }
    }
    points.sort_by(|p, r| (&p.mu_y, &p.mu_x).cmp(&(&r.mu_y, &r.mu_x)));
    Ok(points)
}

/// Sanity checks shared by the command and its tests.
pub fn black_dots_are_usmall(points: &[FigurePoint]) -> bool {
    points.iter().all(|p| !p.nondecreasable || p.usmall)
}
