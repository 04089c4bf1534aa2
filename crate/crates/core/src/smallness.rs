//! Membership in the u-small hull: the convex hull of the Weyl orbits of
//! `2 rho_n` taken over every positive system containing `Delta+(k,t)`.
//!
//! The `2 rho_n` of different positive systems are not W-conjugate, so the
//! hull has one dominant vertex per system (after discarding those below
//! another). A dominant `mu` lies in it iff `sum t_j nu_j - mu` is a
//! non-negative combination of simple roots for some convex weights `t`.
//! With one vertex this is the dominance order; in general it is a small
//! exact linear program. The orbit oracle decides the same question from the
//! full vertex set and exists to cross-check it.

use std::collections::{HashSet, VecDeque};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Frame, Group};
use crate::lattice::{qser, SimpleBasis, Weight, Q};
use crate::linalg::Matrix;
use crate::lp;

/// Largest rank at which the orbit oracle may run.
pub const LP_MAX_RANK: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    OrderTest,
    SvDominance,
    LpOracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `sum weights_j nu_j - mu+ = sum coords_i alpha_i` over the hull vertices.
    ConeCoordinates {
        #[serde(with = "qser::vec")]
        weights: Vec<Q>,
        #[serde(with = "qser::vec")]
        coords: Vec<Q>,
    },
    /// A chamber where `2 rho_n - mu` is dominant.
    Chamber {
        label: String,
        word: Vec<usize>,
    },
    /// `mu = sum c_v v` over orbit vertices.
    Convex {
        vertices: Vec<Weight>,
        #[serde(with = "qser::vec")]
        coefficients: Vec<Q>,
    },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct USmallCertificate {
    pub verdict: bool,
    pub method: Method,
    pub witness: Witness,
    /// Non-zero `trace / dim` of a type A input; the verdict is for its projection.
    #[serde(with = "qser::opt", default, skip_serializing_if = "Option::is_none")]
    pub central_component: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

impl USmallCertificate {
    /// Re-checks the witness arithmetic without recomputing the verdict.
    pub fn revalidate(&self) -> bool {
        match (&self.witness, self.verdict) {
            (Witness::ConeCoordinates { weights, coords }, true) => {
                convex_weights(weights) && coords.iter().all(|c| !c.is_negative())
            }
            (
                Witness::Convex {
                    vertices,
                    coefficients,
                },
                true,
            ) => vertices.len() == coefficients.len() && convex_weights(coefficients),
            (Witness::Chamber { .. }, v) => v,
            (Witness::None, v) => !v,
            (Witness::ConeCoordinates { .. } | Witness::Convex { .. }, false) => false,
        }
    }
}

fn convex_weights(ts: &[Q]) -> bool {
    ts.iter().all(|c| !c.is_negative()) && ts.iter().fold(Q::zero(), |a, c| a + c) == Q::one()
}

/// The dominant hull vertices and the basis they are dominant for.
#[derive(Debug, Clone)]
pub struct Hull {
    pub basis: SimpleBasis,
    /// Maximal elements, in the dominance order, of the dominant
    /// representatives of every frame's `2 rho_n`; sorted.
    pub vertices: Vec<Weight>,
    pub convention: Option<&'static str>,
}

impl Hull {
    pub fn new(group: &Group) -> Hull {
        let basis = group.frames[0].g_simples.clone();
        let mut reps: Vec<Weight> = group
            .frames
            .iter()
            .map(|f| {
                basis
                    .dominant_representative(&f.two_rho_n())
                    .expect("2 rho_n lives in the frame's ambient space")
            })
            .collect();
        reps.sort();
        reps.dedup();
        let below = |a: &Weight, b: &Weight| a != b && basis.in_positive_root_cone(&(b - a));
        let vertices = reps
            .iter()
            .filter(|a| !reps.iter().any(|b| below(a, b)))
            .cloned()
            .collect();
        Hull {
            basis,
            vertices,
            convention: group.convention(),
        }
    }

    /// Convex weights over `vertices` and simple-root coordinates witnessing
    /// membership of an already-projected weight, or `None` outside.
    pub fn contains(&self, mu: &Weight) -> Result<Option<(Vec<Q>, Vec<Q>)>> {
        let top = self.basis.dominant_representative(mu)?;
        let k = self.vertices.len();
        for (j, nu) in self.vertices.iter().enumerate() {
            if let Some(coords) = self.basis.positive_cone_coordinates(&(nu - &top)) {
                let mut weights = vec![Q::zero(); k];
                weights[j] = Q::one();
                return Ok(Some((weights, coords)));
            }
        }
        if k == 1 {
            return Ok(None);
        }
        let Some(target) = self.basis.coordinates(&top)? else {
            return Ok(None);
        };
        let verts: Vec<Vec<Q>> = self
            .vertices
            .iter()
            .map(|v| self.basis.span_coordinates(v))
            .collect::<Result<_>>()?;
        let r = self.basis.rank();
        // Unknowns: t_1..t_k, then c_1..c_r.
        let mut a: Matrix = (0..r)
            .map(|i| {
                let mut row: Vec<Q> = verts.iter().map(|v| v[i].clone()).collect();
                row.extend((0..r).map(|l| if l == i { -Q::one() } else { Q::zero() }));
                row
            })
            .collect();
        let mut sum_row = vec![Q::one(); k];
        sum_row.extend(vec![Q::zero(); r]);
        a.push(sum_row);
        let mut b = target;
        b.push(Q::one());
        Ok(lp::feasible(&a, &b).map(|mut x| {
            let coords = x.split_off(k);
            (x, coords)
        }))
    }
}

/// The dominant representative of `frame`'s `2 rho_n`.
pub fn usmall_hull_vertex(frame: &Frame) -> Result<Weight> {
    frame.g_simples.dominant_representative(&frame.two_rho_n())
}

pub fn is_usmall(group: &Group, mu: &Weight) -> Result<USmallCertificate> {
    let (proj, central) = group.normalize(mu)?;
    let hull = group.hull();
    let witness = match hull.contains(&proj)? {
        Some((weights, coords)) => Witness::ConeCoordinates { weights, coords },
        None => Witness::None,
    };
    Ok(USmallCertificate {
        verdict: witness != Witness::None,
        method: Method::OrderTest,
        witness,
        central_component: central,
        convention: hull.convention.map(str::to_string),
    })
}

/// `2 rho_n - mu` is dominant in `frame`.
pub fn sv_dominant_in(frame: &Frame, mu: &Weight) -> Result<bool> {
    frame.g_simples.is_dominant(&(&frame.two_rho_n() - mu))
}

/// Sufficient test for a k-dominant `mu`: some chamber has `mu + 2 rho_c` and
/// `2 rho_n - mu` both dominant. The k-dominance and the first condition pin
/// `mu` to a K-type and its chamber; the second alone does not imply
/// u-smallness. A weight that is not k-dominant gets verdict false.
pub fn sv_dominance_test(group: &Group, mu: &Weight) -> Result<USmallCertificate> {
    let (proj, central) = group.normalize(mu)?;
    let mut witness = Witness::None;
    for f in &group.frames {
        if f.is_k_dominant(&proj)?
            && f.g_simples.is_dominant(&(&proj + &f.two_rho_c()))?
            && sv_dominant_in(f, &proj)?
        {
            witness = Witness::Chamber {
                label: f.label.clone(),
                word: f.word.clone(),
            };
            break;
        }
    }
    Ok(USmallCertificate {
        verdict: witness != Witness::None,
        method: Method::SvDominance,
        witness,
        central_component: central,
        convention: group.convention().map(str::to_string),
    })
}

/// The orbit `W v` under the reflections of `basis`, sorted.
pub fn weyl_orbit(basis: &SimpleBasis, v: &Weight) -> Vec<Weight> {
    let mut seen = HashSet::from([v.clone()]);
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(x) = queue.pop_front() {
        for i in 0..basis.rank() {
            let y = basis.reflect(&x, i);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort();
    out
}

/// Every point `w 2 rho_n` over all frames and all of `W`, sorted.
pub fn hull_points(group: &Group) -> Vec<Weight> {
    let basis = &group.frames[0].g_simples;
    let mut out: Vec<Weight> = group
        .frames
        .iter()
        .flat_map(|f| weyl_orbit(basis, &f.two_rho_n()))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Exact convex-hull membership from the full point set of [`hull_points`].
pub fn lp_oracle(group: &Group, mu: &Weight) -> Result<bool> {
    Ok(lp_oracle_certificate(group, mu)?.verdict)
}

pub fn lp_oracle_certificate(group: &Group, mu: &Weight) -> Result<USmallCertificate> {
    let rank = group.rank();
    if rank > LP_MAX_RANK {
        return Err(Error::RankGuard {
            rank,
            max: LP_MAX_RANK,
        });
    }
    let (proj, central) = group.normalize(mu)?;
    let vertices = hull_points(group);
    let dim = proj.dim();
    let mut a: Matrix = (0..dim)
        .map(|r| vertices.iter().map(|v| v.coords()[r].clone()).collect())
        .collect();
    a.push(vec![Q::one(); vertices.len()]);
    let mut b: Vec<Q> = proj.coords().to_vec();
    b.push(Q::one());
    let solution = lp::feasible(&a, &b);
    let witness = match solution {
        Some(coefficients) => Witness::Convex {
            vertices,
            coefficients,
        },
        None => Witness::None,
    };
    Ok(USmallCertificate {
        verdict: witness != Witness::None,
        method: Method::LpOracle,
        witness,
        central_component: central,
        convention: group.convention().map(str::to_string),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::qr;
    use crate::rootsys::GroupSpec;

    fn w(xs: &[i64]) -> Weight {
        Weight::from_ints(xs)
    }

    #[test]
    fn su21_hull_vertices() {
        let g = Group::new(GroupSpec::Su { p: 2, q: 1 }).unwrap();
        assert_eq!(g.hull().vertices, vec![w(&[1, 1, -2]), w(&[2, -1, -1])]);
        assert_eq!(g.frames[0].two_rho_n(), w(&[1, 1, -2]));
        for f in &g.frames {
            let v = usmall_hull_vertex(f).unwrap();
            assert!(f.g_simples.is_dominant(&v).unwrap());
        }
    }

    #[test]
    fn hull_vertex_depends_on_chamber() {
        // The orbits of 2 rho_n from different chambers are not W-conjugate.
        let g = Group::new(GroupSpec::SpR { n: 3 }).unwrap();
        let norms: HashSet<Q> = g
            .frames
            .iter()
            .map(|f| usmall_hull_vertex(f).unwrap().norm2())
            .collect();
        assert!(norms.len() > 1);
        assert_eq!(g.hull().vertices, vec![w(&[4, 4, 4])]);
    }

    #[test]
    fn edge_between_vertices_needs_the_program() {
        let g = Group::new(GroupSpec::Su { p: 2, q: 1 }).unwrap();
        let mid = Weight::new(vec![qr(3, 2), Q::zero(), qr(-3, 2)]);
        let c = is_usmall(&g, &mid).unwrap();
        assert!(c.verdict && c.revalidate());
        let Witness::ConeCoordinates { weights, coords } = &c.witness else {
            panic!("{c:?}")
        };
        assert_eq!(weights, &vec![qr(1, 2), qr(1, 2)]);
        assert_eq!(coords, &vec![Q::zero(), Q::zero()]);
        assert!(lp_oracle(&g, &mid).unwrap());
        let beyond = Weight::new(vec![qr(8, 5), Q::zero(), qr(-8, 5)]);
        assert!(!is_usmall(&g, &beyond).unwrap().verdict);
        assert!(!lp_oracle(&g, &beyond).unwrap());
    }

    #[test]
    fn basic_verdicts() {
        let g = Group::new(GroupSpec::Su { p: 2, q: 1 }).unwrap();
        let zero = Weight::zero(3);
        let c = is_usmall(&g, &zero).unwrap();
        assert!(c.verdict && c.revalidate());
        let c = is_usmall(&g, &w(&[1, 1, -2])).unwrap();
        assert_eq!(
            c.witness,
            Witness::ConeCoordinates {
                weights: vec![Q::one(), Q::zero()],
                coords: vec![Q::zero(), Q::zero()]
            }
        );
        let c = is_usmall(&g, &w(&[3, 3, -6])).unwrap();
        assert!(!c.verdict && c.revalidate());
        assert!(!lp_oracle(&g, &w(&[3, 3, -6])).unwrap());
        assert!(sv_dominance_test(&g, &zero).unwrap().verdict);
        assert!(sv_dominance_test(&g, &w(&[1, 1, -2])).unwrap().verdict);
    }

    #[test]
    fn central_component_annotation() {
        let g = Group::new(GroupSpec::Su { p: 2, q: 1 }).unwrap();
        let c = is_usmall(&g, &w(&[2, 1, 0])).unwrap();
        assert_eq!(c.central_component, Some(Q::one()));
        assert!(c.verdict);
    }

    #[test]
    fn lp_vertices_and_midpoints() {
        let g = Group::new(GroupSpec::So2p2q1 { p: 1, q: 1 }).unwrap();
        let f = &g.frames[0];
        let orbit = weyl_orbit(&f.g_simples, &f.two_rho_n());
        for v in &orbit {
            let c = lp_oracle_certificate(&g, v).unwrap();
            assert!(c.verdict && c.revalidate());
        }
        let mid = (&orbit[0] + &orbit[orbit.len() - 1]).scale(&qr(1, 2));
        assert!(lp_oracle(&g, &mid).unwrap());
    }

    #[test]
    fn lp_rank_guard() {
        let g = Group::new(GroupSpec::Su { p: 3, q: 2 }).unwrap();
        assert!(matches!(
            lp_oracle(&g, &Weight::zero(5)),
            Err(Error::RankGuard { rank: 4, max: 3 })
        ));
    }

    #[test]
    fn so43_vertices_are_orbit_points() {
        let g = Group::new(GroupSpec::So2p2q1 { p: 2, q: 1 }).unwrap();
        let hull = g.hull();
        let points = hull_points(&g);
        let dominant: Vec<_> = points
            .iter()
            .filter(|v| hull.basis.is_dominant(v).unwrap())
            .collect();
        for v in &hull.vertices {
            assert!(dominant.contains(&v));
        }
        for d in dominant {
            assert!(is_usmall(&g, d).unwrap().verdict);
        }
    }
}
