//! Non-decreasable K-types: the defining predicate, a boxed enumeration of
//! all of them, and the check that each one is u-small.
//!
//! `mu` is non-decreasable in a frame when `mu` is k-dominant and integral,
//! `mu + 2 rho_c` is g-dominant, and for every fundamental weight `xi_i`
//! either `mu - xi_i` is not k-dominant or `mu + 2 rho_c - xi_i` is not
//! g-dominant.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Frame, Group};
use crate::ktype::LatticeKind;
use crate::lattice::{pair, q, qser, Weight, Q};
use crate::report::{Finding, VerificationReport};
use crate::smallness::{is_usmall, sv_dominant_in, USmallCertificate};

pub const DEFAULT_SLACK: i64 = 4;

/// Bounds on `pair(mu, alpha_i)` for the simple roots of one frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBox {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    pub slack: i64,
}

fn floor_i64(x: &Q) -> i64 {
    x.floor()
        .to_integer()
        .to_i64()
        .expect("box bound fits in i64")
}

fn ceil_i64(x: &Q) -> i64 {
    x.ceil()
        .to_integer()
        .to_i64()
        .expect("box bound fits in i64")
}

impl SearchBox {
    /// `lower_i = -pair(2 rho_c, alpha_i)`; `upper_i = 2 pair(2 rho_n, alpha_i) + slack`,
    /// never below `pair(2 rho_n, alpha_i) + slack`.
    pub fn for_frame(frame: &Frame, slack: i64) -> SearchBox {
        assert!(slack >= 0, "slack must be non-negative");
        let c = frame
            .g_simples
            .pairings(&frame.two_rho_c())
            .expect("same ambient space");
        let x = frame
            .g_simples
            .pairings(&frame.two_rho_n())
            .expect("same ambient space");
        SearchBox {
            lower: c.iter().map(|v| ceil_i64(&-v)).collect(),
            upper: x
                .iter()
                .map(|v| floor_i64(&(v * q(2)).max(v.clone())) + slack)
                .collect(),
            slack,
        }
    }

    pub fn contains(&self, pairings: &[Q]) -> bool {
        pairings
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(p, (lo, hi))| *p >= q(*lo) && *p <= q(*hi))
    }
}

/// Why `mu - xi_i` cannot be used to decrease `mu`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEvidence {
    /// One-based.
    pub index: usize,
    pub k_dominance_fails: bool,
    /// A k-simple root with `pair(mu - xi_i, gamma) < 0`.
    pub k_witness: Option<Weight>,
    pub g_dominance_fails: bool,
}

impl IndexEvidence {
    pub fn holds(&self) -> bool {
        self.k_dominance_fails || self.g_dominance_fails
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameVerdict {
    pub frame: String,
    pub word: Vec<usize>,
    pub nondecreasable: bool,
    #[serde(with = "qser::vec")]
    pub mu_fw_coords: Vec<Q>,
    pub evidence: Vec<IndexEvidence>,
}

/// Evaluates the definition in one frame.
pub fn is_nondecreasable(frame: &Frame, mu: &Weight) -> Result<FrameVerdict> {
    if !frame.is_integral(mu)? {
        return Err(Error::NotIntegral(mu.clone()));
    }
    if !frame.is_k_dominant(mu)? {
        return Err(Error::NotKDominant(mu.clone()));
    }
    let shifted = mu + &frame.two_rho_c();
    if !frame.is_g_dominant(&shifted)? {
        return Err(Error::NotGDominant(shifted));
    }
    let mut evidence = Vec::with_capacity(frame.rank());
    for (i, xi) in frame.xi.iter().enumerate() {
        let lowered = mu - xi;
        let mut k_witness = None;
        for g in &frame.k_simples {
            if pair(&lowered, g)?.is_negative() {
                k_witness = Some(g.clone());
                break;
            }
        }
        evidence.push(IndexEvidence {
            index: i + 1,
            k_dominance_fails: k_witness.is_some(),
            k_witness,
            g_dominance_fails: !frame.is_g_dominant(&(&shifted - xi))?,
        });
    }
    Ok(FrameVerdict {
        frame: frame.label.clone(),
        word: frame.word.clone(),
        nondecreasable: evidence.iter().all(IndexEvidence::holds),
        mu_fw_coords: frame.fw_coordinates(mu)?,
        evidence,
    })
}

/// Integer form of one frame's data, every pairing scaled by `d`.
struct IntFrame {
    d: i64,
    /// `g[i][j]`: scaled `pair(L_j, alpha_i)`.
    g: Vec<Vec<i64>>,
    /// `k[r][j]`: scaled `pair(L_j, gamma_r)`.
    k: Vec<Vec<i64>>,
    /// `x[r][i]`: scaled `pair(xi_i, gamma_r)`.
    x: Vec<Vec<i64>>,
    /// Scaled `pair(2 rho_c, alpha_i)`.
    c: Vec<i64>,
    lo: Vec<i64>,
    hi: Vec<i64>,
    /// Range of each lattice coordinate.
    range: Vec<(i64, i64)>,
}

fn lcm_denoms<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn scaled(x: &Q, d: &BigInt) -> i64 {
    (x * Q::from_integer(d.clone()))
        .to_integer()
        .to_i64()
        .expect("scaled pairing fits in i64")
}

impl IntFrame {
    fn new(frame: &Frame, sbox: &SearchBox) -> Result<IntFrame> {
        let n = frame.rank();
        let g: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                frame
                    .lattice
                    .iter()
                    .map(|l| frame.g_simples.pairing(l, i))
                    .collect()
            })
            .collect();
        let k: Vec<Vec<Q>> = frame
            .k_simples
            .iter()
            .map(|gm| {
                frame
                    .lattice
                    .iter()
                    .map(|l| pair(l, gm))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let x: Vec<Vec<Q>> = frame
            .k_simples
            .iter()
            .map(|gm| {
                frame
                    .xi
                    .iter()
                    .map(|xi| pair(xi, gm))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let c = frame.g_simples.pairings(&frame.two_rho_c())?;
        let d = lcm_denoms(g.iter().chain(&k).chain(&x).flatten().chain(&c));
        let di = d.to_i64().expect("denominator fits in i64");
        let sc = |m: &Vec<Vec<Q>>| -> Vec<Vec<i64>> {
            m.iter()
                .map(|r| r.iter().map(|v| scaled(v, &d)).collect())
                .collect()
        };
        let range = match frame.lattice_kind {
            LatticeKind::GIntegral => sbox
                .lower
                .iter()
                .copied()
                .zip(sbox.upper.iter().copied())
                .collect(),
            LatticeKind::KWeights => frame
                .k_simples
                .iter()
                .map(|beta| {
                    // pair(mu, beta) = sum_i w_i pair(mu, alpha_i) with w_i >= 0.
                    let coeffs = frame
                        .g_simples
                        .coordinates(beta)?
                        .ok_or_else(|| Error::NotARoot(beta.clone()))?;
                    let mut lo = Q::zero();
                    let mut hi = Q::zero();
                    for (i, ci) in coeffs.iter().enumerate() {
                        let w = ci * frame.g_simples.norm2(i) / beta.norm2();
                        debug_assert!(!w.is_negative());
                        lo += &w * q(sbox.lower[i]);
                        hi += &w * q(sbox.upper[i]);
                    }
                    Ok((ceil_i64(&lo).max(0), floor_i64(&hi)))
                })
                .collect::<Result<_>>()?,
        };
        Ok(IntFrame {
            d: di,
            g: sc(&g),
            k: sc(&k),
            x: sc(&x),
            c: c.iter().map(|v| scaled(v, &d)).collect(),
            lo: sbox.lower.iter().map(|v| v * di).collect(),
            hi: sbox.upper.iter().map(|v| v * di).collect(),
            range,
        })
    }

    fn accepts(&self, z: &[i64]) -> bool {
        let n = z.len();
        let gp: Vec<i64> = self
            .g
            .iter()
            .map(|r| r.iter().zip(z).map(|(a, b)| a * b).sum())
            .collect();
        if gp
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .any(|(p, (l, h))| p < l || p > h)
        {
            return false;
        }
        let kp: Vec<i64> = self
            .k
            .iter()
            .map(|r| r.iter().zip(z).map(|(a, b)| a * b).sum())
            .collect();
        if kp.iter().any(|v| *v < 0) {
            return false;
        }
        if gp.iter().zip(&self.c).any(|(p, c)| p + c < 0) {
            return false;
        }
        (0..n).all(|i| {
            gp[i] + self.c[i] < self.d || kp.iter().zip(&self.x).any(|(v, xr)| v - xr[i] < 0)
        })
    }

    /// Lattice coordinates of every accepted point, in odometer order.
    fn scan(&self) -> Vec<Vec<i64>> {
        let n = self.range.len();
        if self.range.iter().any(|(l, h)| l > h) {
            return Vec::new();
        }
        let (l0, h0) = self.range[0];
        (l0..=h0)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut out = Vec::new();
                let mut z: Vec<i64> = self.range.iter().map(|r| r.0).collect();
                z[0] = first;
                loop {
                    if self.accepts(&z) {
                        out.push(z.clone());
                    }
                    // Advance coordinates 1..n; coordinate 0 is fixed per task.
                    let mut j = n;
                    loop {
                        if j == 1 {
                            return out;
                        }
                        j -= 1;
                        if z[j] < self.range[j].1 {
                            z[j] += 1;
                            break;
                        }
                        z[j] = self.range[j].0;
                    }
                }
            })
            .collect()
    }
}

/// Every non-decreasable weight of one frame inside its search box.
pub fn enumerate_frame(frame: &Frame, slack: i64) -> Result<Vec<Weight>> {
    let sbox = SearchBox::for_frame(frame, slack);
    let data = IntFrame::new(frame, &sbox)?;
    let mut out = Vec::new();
    for z in data.scan() {
        let mu = frame
            .lattice
            .iter()
            .zip(&z)
            .fold(Weight::zero(frame.dim()), |acc, (l, c)| {
                acc.add_scaled(&q(*c), l)
            });
        let verdict = is_nondecreasable(frame, &mu)?;
        assert!(
            verdict.nondecreasable && sbox.contains(&verdict.mu_fw_coords),
            "integer scan and exact evaluation disagree at {mu} in {}",
            frame.label
        );
        out.push(mu);
    }
    out.sort();
    Ok(out)
}

/// A non-decreasable weight with every frame it qualifies in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonDecrCandidate {
    pub mu: Weight,
    pub dominant_rep: Weight,
    /// Frames in which `mu` is non-decreasable.
    pub qualifying: Vec<FrameVerdict>,
    /// Frames in which `mu + 2 rho_c` is g-dominant.
    pub admissible: Vec<String>,
    /// Non-decreasable in every admissible frame.
    pub universal: bool,
}

/// Union over frames, one record per weight, sorted by dominant representative.
pub fn enumerate_nondecreasable(group: &Group, slack: i64) -> Result<Vec<NonDecrCandidate>> {
    let per_frame: Vec<Vec<Weight>> = group
        .frames
        .par_iter()
        .map(|f| enumerate_frame(f, slack))
        .collect::<Result<_>>()?;
    let mut found: BTreeMap<Weight, ()> = BTreeMap::new();
    for ws in &per_frame {
        for w in ws {
            found.insert(w.clone(), ());
        }
    }
    let basis = &group.frames[0].g_simples;
    let mut out: Vec<NonDecrCandidate> = found
        .into_keys()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|mu| {
            let mut qualifying = Vec::new();
            let mut admissible = Vec::new();
            for f in &group.frames {
                match is_nondecreasable(f, mu) {
                    Ok(v) => {
                        admissible.push(f.label.clone());
                        if v.nondecreasable {
                            qualifying.push(v);
                        }
                    }
                    Err(Error::NotGDominant(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(NonDecrCandidate {
                mu: mu.clone(),
                dominant_rep: basis.dominant_representative(mu)?,
                universal: qualifying.len() == admissible.len(),
                qualifying,
                admissible,
            })
        })
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| (&a.dominant_rep, &a.mu).cmp(&(&b.dominant_rep, &b.mu)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameCount {
    pub frame: String,
    pub word: Vec<usize>,
    pub candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedCandidate {
    pub candidate: NonDecrCandidate,
    pub usmall: USmallCertificate,
    /// `2 rho_n - mu` dominant in every qualifying frame (equal rank only).
    pub sv_own_chamber: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub group: String,
    pub slack: i64,
    pub per_frame: Vec<FrameCount>,
    pub candidates: Vec<CheckedCandidate>,
    pub report: VerificationReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

impl TheoremReport {
    pub fn counterexamples(&self) -> &[Finding] {
        &self.report.failures
    }
}

/// Checks that every enumerated non-decreasable weight is u-small and, for
/// equal-rank forms, that `2 rho_n - mu` is dominant in each qualifying chamber.
pub fn verify_theorem(group: &Group, slack: i64) -> Result<TheoremReport> {
    let cands = enumerate_nondecreasable(group, slack)?;
    let mut report = VerificationReport::new("theorem");
    report.group = Some(group.spec.label());
    let per_frame = group
        .frames
        .iter()
        .map(|f| FrameCount {
            frame: f.label.clone(),
            word: f.word.clone(),
            candidates: cands
                .iter()
                .filter(|c| c.qualifying.iter().any(|v| v.frame == f.label))
                .count(),
        })
        .collect();
    let mut checked = Vec::with_capacity(cands.len());
    for cand in cands {
        let usmall = is_usmall(group, &cand.mu)?;
        report.checked += 1;
        if !usmall.verdict {
            report.fail(Finding::new(
                cand.qualifying[0].frame.clone(),
                Some(cand.mu.clone()),
                "non-decreasable but not u-small".into(),
            ));
        }
        let sv_own_chamber = if group.is_equal_rank() {
            let mut all = true;
            for v in &cand.qualifying {
                report.checked += 1;
                let f = group
                    .frame_by_label(&v.frame)
                    .expect("qualifying frame exists");
                if !sv_dominant_in(f, &cand.mu)? {
                    all = false;
                    report.fail(Finding::new(
                        v.frame.clone(),
                        Some(cand.mu.clone()),
                        "2 rho_n - mu is not dominant in the qualifying chamber".into(),
                    ));
                }
            }
            Some(all)
        } else {
            None
        };
        checked.push(CheckedCandidate {
            candidate: cand,
            usmall,
            sv_own_chamber,
        });
    }
    Ok(TheoremReport {
        group: group.spec.label(),
        slack,
        per_frame,
        candidates: checked,
        report,
        convention: group.convention().map(str::to_string),
    })
}
