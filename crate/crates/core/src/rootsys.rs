//! Classical root systems in their standard `e_i` realizations, the real
//! forms handled by this crate, and the symbolic positive-root lists written
//! in simple-root coordinates.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{q, qr, SimpleBasis, Weight};

/// Cartan type of a reduced classical root system. The payload is the rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
}

impl RootType {
    pub fn rank(self) -> usize {
        match self {
            RootType::A(n) | RootType::B(n) | RootType::C(n) | RootType::D(n) => n,
        }
    }

    /// Dimension of the ambient space of the `e_i` realization.
    pub fn ambient_dim(self) -> usize {
        match self {
            RootType::A(n) => n + 1,
            _ => self.rank(),
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, RootType::A(_) | RootType::D(_))
    }

    /// Order of the Weyl group.
    pub fn weyl_order(self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            RootType::A(n) => fact(n + 1),
            RootType::B(n) | RootType::C(n) => (1u128 << n) * fact(n),
            RootType::D(n) => (1u128 << (n - 1)) * fact(n),
        }
    }

    pub fn num_positive_roots(self) -> usize {
        match self {
            RootType::A(n) => n * (n + 1) / 2,
            RootType::B(n) | RootType::C(n) => n * n,
            RootType::D(n) => n * (n - 1),
        }
    }

    /// Standard simple roots: `alpha_i = e_i - e_{i+1}` and the last one per type.
    pub fn simple_roots(self) -> Vec<Weight> {
        let n = self.rank();
        let dim = self.ambient_dim();
        let e = |i: usize| Weight::unit(dim, i);
        let mut simples: Vec<Weight> = (0..n.saturating_sub(1))
            .map(|i| &e(i) - &e(i + 1))
            .collect();
        let last = match self {
            RootType::A(_) => &e(n - 1) - &e(n),
            RootType::B(_) => e(n - 1),
            RootType::C(_) => e(n - 1).scale_int(2),
            RootType::D(_) => &e(n - 2) + &e(n - 1),
        };
        simples.push(last);
        simples
    }

    pub fn simple_basis(self) -> SimpleBasis {
        SimpleBasis::new(self.simple_roots()).expect("standard simple roots are valid")
    }

    /// Positive roots in the `e_i` realization.
    pub fn positive_roots(self) -> Vec<Weight> {
        let dim = self.ambient_dim();
        let e = |i: usize| Weight::unit(dim, i);
        let mut roots = Vec::new();
        match self {
            RootType::A(_) => {
                for i in 0..dim {
                    for j in i + 1..dim {
                        roots.push(&e(i) - &e(j));
                    }
                }
            }
            _ => {
                let n = self.rank();
                for i in 0..n {
                    for j in i + 1..n {
                        roots.push(&e(i) - &e(j));
                        roots.push(&e(i) + &e(j));
                    }
                }
                for k in 0..n {
                    match self {
                        RootType::B(_) => roots.push(e(k)),
                        RootType::C(_) => roots.push(e(k).scale_int(2)),
                        _ => {}
                    }
                }
            }
        }
        roots
    }

    /// The positive roots as labelled lists in simple-root coordinates:
    /// `A0/A1`, `B0..B3`, `C0..C3`, `D0..D4`.
    pub fn symbolic_positive_roots(self) -> Vec<SymbolicRoot> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut push = |list: RootList, f: &dyn Fn(usize) -> i64| {
            out.push(SymbolicRoot {
                list,
                coeffs: (1..=n).map(f).collect(),
            });
        };
        // Indices below are 1-based to match the usual diagram labels.
        for i in 1..=n {
            push(RootList::Simple, &|k| (k == i) as i64);
        }
        match self {
            RootType::A(_) => {
                for l in 1..=n {
                    for m in l + 1..=n {
                        push(RootList::Interval, &|k| (l <= k && k <= m) as i64);
                    }
                }
            }
            RootType::B(_) => {
                for l in 1..n {
                    for m in l + 1..n {
                        push(RootList::B1, &|k| (l <= k && k <= m) as i64);
                    }
                }
                for l in 1..n {
                    push(RootList::B2, &|k| (l <= k) as i64);
                }
                for l in 1..=n {
                    for m in l + 1..=n {
                        push(RootList::B3, &|k| {
                            if k >= m {
                                2
                            } else {
                                (k >= l) as i64
                            }
                        });
                    }
                }
            }
            RootType::C(_) => {
                for l in 1..=n {
                    for m in l + 1..=n {
                        push(RootList::C1, &|k| (l <= k && k <= m) as i64);
                    }
                }
                for l in 1..n {
                    for m in l + 1..n {
                        push(RootList::C2, &|k| {
                            if k == n {
                                1
                            } else if k >= m {
                                2
                            } else {
                                (k >= l) as i64
                            }
                        });
                    }
                }
                for m in 1..n {
                    push(RootList::C3, &|k| {
                        if k == n {
                            1
                        } else {
                            2 * (k >= m) as i64
                        }
                    });
                }
            }
            RootType::D(_) => {
                for l in 1..n {
                    for m in l + 1..n {
                        push(RootList::D1, &|k| (l <= k && k <= m) as i64);
                    }
                }
                for l in 1..n - 1 {
                    push(RootList::D2, &|k| (k == n || (l <= k && k <= n - 2)) as i64);
                }
                for l in 1..n - 1 {
                    push(RootList::D3, &|k| (l <= k) as i64);
                }
                for l in 1..n - 1 {
                    for m in l + 1..n - 1 {
                        push(RootList::D4, &|k| {
                            if k >= n - 1 {
                                1
                            } else if k >= m {
                                2
                            } else {
                                (k >= l) as i64
                            }
                        });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::B(n) => write!(f, "B{n}"),
            RootType::C(n) => write!(f, "C{n}"),
            RootType::D(n) => write!(f, "D{n}"),
        }
    }
}

/// Which symbolic list a positive root belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootList {
    Simple,
    Interval,
    B1,
    B2,
    B3,
    C1,
    C2,
    C3,
    D1,
    D2,
    D3,
    D4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicRoot {
    pub list: RootList,
    pub coeffs: Vec<i64>,
}

/// A classical real form. Parameters follow the usual notation, e.g.
/// `So2p2q1 { p, q }` is so(2p, 2q+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    Su {
        p: usize,
        q: usize,
    },
    So2n1 {
        n: usize,
    },
    So2p2q1 {
        p: usize,
        q: usize,
    },
    SpR {
        n: usize,
    },
    Sp {
        p: usize,
        q: usize,
    },
    SoStar {
        n: usize,
    },
    So2p2q {
        p: usize,
        q: usize,
    },
    /// sl(2n+1, R)
    SlOddR {
        n: usize,
    },
    /// sl(2n, R)
    SlEvenR {
        n: usize,
    },
    /// sl(n, H)
    SlH {
        n: usize,
    },
    /// so(2p+1, 2q+1)
    So2p1_2q1 {
        p: usize,
        q: usize,
    },
}

impl GroupSpec {
    /// Rejects degenerate parameters and ranks below the classification
    /// hypotheses.
    pub fn validate(&self) -> Result<()> {
        let fail = |bound: &'static str| {
            Err(Error::RankOutOfScope {
                group: self.to_string(),
                bound,
            })
        };
        match *self {
            GroupSpec::Su { p, q } if p == 0 || q == 0 => fail("p >= 1 and q >= 1 required"),
            GroupSpec::So2n1 { n } if n <= 1 => fail("n > 1 required"),
            GroupSpec::So2p2q1 { p, q } if p == 0 || q == 0 || p + q <= 1 => {
                fail("p >= 1, q >= 1 and p + q > 1 required")
            }
            GroupSpec::SpR { n } if n <= 2 => fail("n > 2 required"),
            GroupSpec::Sp { p, q } if p == 0 || q == 0 || p + q <= 2 => {
                fail("p >= 1, q >= 1 and p + q > 2 required")
            }
            GroupSpec::SoStar { n } if n <= 3 => fail("n > 3 required"),
            GroupSpec::So2p2q { p, q } if p == 0 || q == 0 || p + q <= 3 => {
                fail("p >= 1, q >= 1 and p + q > 3 required")
            }
            GroupSpec::SlOddR { n: 0 } => fail("n >= 1 required"),
            GroupSpec::SlEvenR { n } if n < 2 => fail("n >= 2 required"),
            GroupSpec::SlH { n } if n < 2 => fail("n >= 2 required"),
            GroupSpec::So2p1_2q1 { p, q } if q == 0 || p + q < 2 => {
                fail("q >= 1 and p + q >= 2 required")
            }
            _ => Ok(()),
        }
    }

    pub fn is_equal_rank(&self) -> bool {
        !matches!(
            self,
            GroupSpec::SlOddR { .. }
                | GroupSpec::SlEvenR { .. }
                | GroupSpec::SlH { .. }
                | GroupSpec::So2p1_2q1 { .. }
        )
    }

    /// Reduced type of the (restricted) root system of `g` relative to `t`.
    pub fn root_type(&self) -> RootType {
        match *self {
            GroupSpec::Su { p, q } => RootType::A(p + q - 1),
            GroupSpec::So2n1 { n } => RootType::B(n),
            GroupSpec::So2p2q1 { p, q } => RootType::B(p + q),
            GroupSpec::SpR { n } => RootType::C(n),
            GroupSpec::Sp { p, q } => RootType::C(p + q),
            GroupSpec::SoStar { n } => RootType::D(n),
            GroupSpec::So2p2q { p, q } => RootType::D(p + q),
            GroupSpec::SlOddR { n } => RootType::B(n),
            GroupSpec::SlEvenR { n } => RootType::C(n),
            GroupSpec::SlH { n } => RootType::C(n),
            GroupSpec::So2p1_2q1 { p, q } => RootType::B(p + q),
        }
    }

    pub fn rank(&self) -> usize {
        self.root_type().rank()
    }

    /// Type-A groups are handled modulo the centre (trace-zero projection).
    pub fn trace_zero(&self) -> bool {
        matches!(self, GroupSpec::Su { .. })
    }

    /// The group string accepted by the command line (`su:2,1`, `so*:8`, ...).
    pub fn label(&self) -> String {
        match *self {
            GroupSpec::Su { p, q } => format!("su:{p},{q}"),
            GroupSpec::So2n1 { n } => format!("so:{},1", 2 * n),
            GroupSpec::So2p2q1 { p, q } => format!("so:{},{}", 2 * p, 2 * q + 1),
            GroupSpec::SpR { n } => format!("sp:{n},R"),
            GroupSpec::Sp { p, q } => format!("sp:{p},{q}"),
            GroupSpec::SoStar { n } => format!("so*:{}", 2 * n),
            GroupSpec::So2p2q { p, q } => format!("so:{},{}", 2 * p, 2 * q),
            GroupSpec::SlOddR { n } => format!("sl:{},R", 2 * n + 1),
            GroupSpec::SlEvenR { n } => format!("sl:{},R", 2 * n),
            GroupSpec::SlH { n } => format!("sl:{n},H"),
            GroupSpec::So2p1_2q1 { p, q } => format!("so:{},{}", 2 * p + 1, 2 * q + 1),
        }
    }

    /// Every real form in scope of rank at most `max_rank`, in a fixed order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<GroupSpec> {
        let mut out = Vec::new();
        for n in 1..=max_rank {
            // su(p,q) has rank p+q-1.
            for p in 1..=n {
                out.push(GroupSpec::Su { p, q: n + 1 - p });
            }
            out.push(GroupSpec::So2n1 { n });
            for p in 1..n {
                out.push(GroupSpec::So2p2q1 { p, q: n - p });
            }
            out.push(GroupSpec::SpR { n });
            for p in 1..n {
                out.push(GroupSpec::Sp { p, q: n - p });
            }
            out.push(GroupSpec::SoStar { n });
            for p in 1..=n / 2 {
                out.push(GroupSpec::So2p2q { p, q: n - p });
            }
            out.push(GroupSpec::SlOddR { n });
            out.push(GroupSpec::SlEvenR { n });
            out.push(GroupSpec::SlH { n });
            for p in 0..n {
                out.push(GroupSpec::So2p1_2q1 { p, q: n - p });
            }
        }
        out.retain(|g| g.validate().is_ok());
        out
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupSpec::Su { p, q } => write!(f, "su({p},{q})"),
            GroupSpec::So2n1 { n } => write!(f, "so({},1)", 2 * n),
            GroupSpec::So2p2q1 { p, q } => write!(f, "so({},{})", 2 * p, 2 * q + 1),
            GroupSpec::SpR { n } => write!(f, "sp({n},R)"),
            GroupSpec::Sp { p, q } => write!(f, "sp({p},{q})"),
            GroupSpec::SoStar { n } => write!(f, "so*({})", 2 * n),
            GroupSpec::So2p2q { p, q } => write!(f, "so({},{})", 2 * p, 2 * q),
            GroupSpec::SlOddR { n } => write!(f, "sl({},R)", 2 * n + 1),
            GroupSpec::SlEvenR { n } => write!(f, "sl({},R)", 2 * n),
            GroupSpec::SlH { n } => write!(f, "sl({n},H)"),
            GroupSpec::So2p1_2q1 { p, q } => write!(f, "so({},{})", 2 * p + 1, 2 * q + 1),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootSystemData {
    pub spec: GroupSpec,
    pub root_type: RootType,
    pub positive_roots: Vec<Weight>,
    pub simples: SimpleBasis,
    pub fundamental_weights: Vec<Weight>,
    pub is_equal_rank: bool,
    /// `symbolic[k]` expresses `positive_roots[k]` in simple-root coordinates.
    pub symbolic: Vec<SymbolicRoot>,
}

impl RootSystemData {
    pub fn dim(&self) -> usize {
        self.root_type.ambient_dim()
    }

    /// All roots, positive then negative.
    pub fn all_roots(&self) -> Vec<Weight> {
        self.positive_roots
            .iter()
            .cloned()
            .chain(self.positive_roots.iter().map(|r| -r))
            .collect()
    }

    pub fn is_long(&self, root: &Weight) -> bool {
        let max = self
            .positive_roots
            .iter()
            .map(Weight::norm2)
            .max()
            .expect("non-empty");
        root.norm2() == max
    }

    pub fn rho(&self) -> Weight {
        half_sum(&self.positive_roots, self.dim())
    }
}

/// Builds the reference realization of the root system underlying `spec`
/// and cross-checks the symbolic lists against it.
pub fn build_root_system(spec: GroupSpec) -> Result<RootSystemData> {
    spec.validate()?;
    let root_type = spec.root_type();
    let simples = root_type.simple_basis();
    let fundamental_weights = fundamental_weights_for(&simples);
    let realized = root_type.positive_roots();

    let mut index: HashMap<Weight, usize> = realized
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect();
    let mut ordered = Vec::with_capacity(realized.len());
    let mut symbolic = Vec::with_capacity(realized.len());
    for s in root_type.symbolic_positive_roots() {
        let coeffs: Vec<_> = s.coeffs.iter().map(|&c| q(c)).collect();
        let root = simples.combination(&coeffs);
        let Some(_) = index.remove(&root) else {
            panic!(
                "{root_type}: symbolic root {:?} is not a positive root (or is repeated)",
                s
            );
        };
        ordered.push(root);
        symbolic.push(s);
    }
    assert!(
        index.is_empty(),
        "{root_type}: symbolic lists miss {:?}",
        index.keys()
    );

    Ok(RootSystemData {
        spec,
        root_type,
        positive_roots: ordered,
        simples,
        fundamental_weights,
        is_equal_rank: spec.is_equal_rank(),
        symbolic,
    })
}

/// `(1/2) * sum(roots)`.
pub fn half_sum(roots: &[Weight], dim: usize) -> Weight {
    Weight::sum(dim, roots).scale(&qr(1, 2))
}

pub fn fundamental_weights_for(simples: &SimpleBasis) -> Vec<Weight> {
    simples.fundamental_weights()
}
