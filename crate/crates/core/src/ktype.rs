//! Compact simple roots per chamber, their classification in terms of the
//! chamber's simple roots, the coefficient checks that feed the main
//! dominance argument, and the restricted-root tables for the non-equal-rank
//! forms.

use std::collections::HashSet;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{q, to_i64, SimpleBasis, Weight};
use crate::report::{Finding, VerificationReport};
use crate::rootsys::{half_sum, GroupSpec, RootType};
use crate::vogan::{enumerate_positive_systems, Chamber};

/// Positive roots of `set` that are not a sum of two members of `set`
/// (a member may be used twice, so `2e_i = e_i + e_i` is decomposable).
pub fn indecomposables(set: &[Weight]) -> Vec<Weight> {
    let lookup: HashSet<&Weight> = set.iter().collect();
    let mut out: Vec<Weight> = set
        .iter()
        .filter(|g| {
            !set.iter().any(|a| {
                let rest = *g - a;
                !rest.is_zero() && lookup.contains(&rest)
            })
        })
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Simple roots of `Delta+(k,t)` seen from chamber `c`.
pub fn compact_simple_roots(c: &Chamber) -> Vec<Weight> {
    indecomposables(&c.compact_positive_roots())
}

/// Shape of a compact simple root in the chamber's simple roots. Indices are
/// one-based, matching the diagram labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum CaseTag {
    /// `gamma` is itself a simple root.
    Simple { i: usize },
    /// `alpha_l + ... + alpha_m`, `l < m`.
    Interval { l: usize, m: usize },
    /// `alpha_l + ... + alpha_{m-1} + 2(alpha_m + ... + alpha_n)`, `l < m - 1`.
    B3Form { l: usize, m: usize },
    /// `alpha_{m-1} + 2(alpha_m + ... + alpha_n)`.
    B3Degenerate { m: usize },
    /// `2(alpha_l + ... + alpha_{n-1}) + alpha_n`.
    C3Form { l: usize },
    /// `alpha_l + ... + alpha_{n-2} + alpha_n`.
    D2Form { l: usize },
    /// `alpha_l + ... + alpha_n`, `l < n - 2`.
    D3Form { l: usize },
    /// `alpha_{n-2} + alpha_{n-1} + alpha_n`.
    D3Degenerate,
    /// `alpha_l + ... + alpha_{m-1} + 2(alpha_m + ... + alpha_{n-2}) + alpha_{n-1} + alpha_n`, `l < m - 1`.
    D4Form { l: usize, m: usize },
    /// `alpha_l + 2(alpha_{l+1} + ... + alpha_{n-2}) + alpha_{n-1} + alpha_n`.
    D4Degenerate { l: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSimpleClassification {
    pub gamma: Weight,
    pub case_tag: CaseTag,
    /// Item number of the family's classification list.
    pub item: u8,
    /// Coefficients of `gamma` in the chamber's simple roots.
    pub coeffs: Vec<i64>,
    /// Painted (non-compact) support indices required by the case.
    pub noncompact_support: Vec<usize>,
    /// Compactness of every simple root of the chamber.
    pub compact_pattern: Vec<bool>,
}

struct Shape {
    tag: CaseTag,
    item: u8,
    coeffs: Vec<i64>,
    noncompact: Vec<usize>,
}

/// All admissible shapes for the family at rank `n`.
fn family_shapes(spec: &GroupSpec) -> Result<Vec<Shape>> {
    let n = spec.rank();
    let vec_from = |f: &dyn Fn(usize) -> i64| (1..=n).map(f).collect::<Vec<i64>>();
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(Shape {
            tag: CaseTag::Simple { i },
            item: 1,
            coeffs: vec_from(&|k| (k == i) as i64),
            noncompact: vec![],
        });
    }
    let interval = |l: usize, m: usize, item: u8| Shape {
        tag: CaseTag::Interval { l, m },
        item,
        coeffs: vec_from(&|k| (l <= k && k <= m) as i64),
        noncompact: vec![l, m],
    };
    match *spec {
        GroupSpec::Su { .. } | GroupSpec::SpR { .. } => {
            for l in 1..=n {
                for m in l + 1..=n {
                    out.push(interval(l, m, 2));
                }
            }
        }
        GroupSpec::So2n1 { .. } => out.push(Shape {
            tag: CaseTag::B3Degenerate { m: n },
            item: 2,
            coeffs: vec_from(&|k| if k == n { 2 } else { (k == n - 1) as i64 }),
            noncompact: vec![n],
        }),
        GroupSpec::So2p2q1 { .. } => {
            for l in 1..=n {
                for m in l + 1..=n {
                    out.push(interval(l, m, 2));
                }
            }
            for m in 2..=n {
                for l in 1..m - 1 {
                    out.push(Shape {
                        tag: CaseTag::B3Form { l, m },
                        item: 3,
                        coeffs: vec_from(&|k| if k >= m { 2 } else { (k >= l) as i64 }),
                        noncompact: vec![l, m - 1, m],
                    });
                }
                out.push(Shape {
                    tag: CaseTag::B3Degenerate { m },
                    item: 4,
                    coeffs: vec_from(&|k| if k >= m { 2 } else { (k == m - 1) as i64 }),
                    noncompact: vec![m],
                });
            }
        }
        GroupSpec::Sp { .. } => {
            for l in 1..=n {
                for m in l + 1..=n {
                    out.push(interval(l, m, 2));
                }
            }
            for l in 1..n {
                out.push(Shape {
                    tag: CaseTag::C3Form { l },
                    item: 3,
                    coeffs: vec_from(&|k| if k == n { 1 } else { 2 * (k >= l) as i64 }),
                    noncompact: vec![l],
                });
            }
        }
        GroupSpec::SoStar { .. } | GroupSpec::So2p2q { .. } => {
            for l in 1..n {
                for m in l + 1..n {
                    out.push(interval(l, m, 2));
                }
            }
            for l in 1..n - 1 {
                out.push(Shape {
                    tag: CaseTag::D2Form { l },
                    item: 3,
                    coeffs: vec_from(&|k| (k == n || (l <= k && k <= n - 2)) as i64),
                    noncompact: vec![l, n],
                });
            }
            if matches!(spec, GroupSpec::So2p2q { .. }) {
                for l in 1..n - 2 {
                    out.push(Shape {
                        tag: CaseTag::D3Form { l },
                        item: 4,
                        coeffs: vec_from(&|k| (k >= l) as i64),
                        noncompact: vec![l, n - 2, n - 1, n],
                    });
                }
                out.push(Shape {
                    tag: CaseTag::D3Degenerate,
                    item: 5,
                    coeffs: vec_from(&|k| (k >= n - 2) as i64),
                    noncompact: vec![n - 1, n],
                });
                for m in 3..n - 1 {
                    for l in 1..m - 1 {
                        out.push(Shape {
                            tag: CaseTag::D4Form { l, m },
                            item: 6,
                            coeffs: vec_from(&|k| {
                                if k >= n - 1 {
                                    1
                                } else if k >= m {
                                    2
                                } else {
                                    (k >= l) as i64
                                }
                            }),
                            noncompact: vec![l, m - 1, m],
                        });
                    }
                }
                for l in 1..n - 2 {
                    out.push(Shape {
                        tag: CaseTag::D4Degenerate { l },
                        item: 7,
                        coeffs: vec_from(&|k| {
                            if k >= n - 1 || k == l {
                                1
                            } else {
                                2 * (k > l) as i64
                            }
                        }),
                        noncompact: vec![l + 1],
                    });
                }
            }
        }
        _ => {
            return Err(Error::Unsupported {
                group: spec.to_string(),
                reason: "classification lists cover equal-rank forms only",
            })
        }
    }
    Ok(out)
}

/// How many family shapes have exactly these coefficients.
pub fn matching_shape_count(spec: &GroupSpec, coeffs: &[i64]) -> Result<usize> {
    Ok(family_shapes(spec)?
        .iter()
        .filter(|s| s.coeffs == coeffs)
        .count())
}

/// Identifies the classification case of a compact simple root and checks
/// its compactness pattern.
pub fn classify_k_simple(
    spec: &GroupSpec,
    c: &Chamber,
    gamma: &Weight,
) -> Result<KSimpleClassification> {
    let fail = || Error::ClassificationFailure {
        word: c.word.clone(),
        gamma: gamma.clone(),
    };
    let coeffs = c.simples().integer_coordinates(gamma)?.ok_or_else(fail)?;
    let painted = &c.diagram.painted;
    let shapes = family_shapes(spec)?;
    let mut hits = shapes.iter().filter(|s| s.coeffs == coeffs);
    let shape = hits.next().ok_or_else(fail)?;
    if hits.next().is_some() {
        return Err(fail());
    }
    let pattern_ok = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .all(|(k, _)| {
            let required_noncompact = shape.noncompact.contains(&(k + 1));
            painted[k] == required_noncompact
        });
    if !pattern_ok {
        return Err(fail());
    }
    Ok(KSimpleClassification {
        gamma: gamma.clone(),
        case_tag: shape.tag,
        item: shape.item,
        coeffs,
        noncompact_support: shape.noncompact.clone(),
        compact_pattern: painted.iter().map(|p| !p).collect(),
    })
}

/// Every chain of simple roots `a_1, a_1 + a_2, ...` whose partial sums are
/// positive roots with `gamma` minus the partial sum also a positive root
/// must start at a non-compact root and continue through compact ones.
pub fn check_component_lemma(c: &Chamber, gamma: &Weight) -> VerificationReport {
    let mut report = VerificationReport::new("component-lemma");
    let n = c.rank();
    let simples = c.simples();
    let painted = &c.diagram.painted;
    // Depth-first over chains; `sum` is the current partial sum.
    let mut stack: Vec<(Vec<usize>, Weight)> = Vec::new();
    for v in 0..n {
        let s = simples.simple(v).clone();
        if c.is_positive_root(&(gamma - &s)) {
            stack.push((vec![v], s));
        }
    }
    while let Some((chain, sum)) = stack.pop() {
        report.checked += 1;
        let head_ok = painted[chain[0]];
        let tail_ok = chain[1..].iter().all(|&k| !painted[k]);
        if !(head_ok && tail_ok) {
            report.fail(Finding::new(
                c.label(),
                Some(gamma.clone()),
                format!(
                    "chain {:?}: head must be non-compact and the rest compact",
                    chain.iter().map(|k| k + 1).collect::<Vec<_>>()
                ),
            ));
        }
        for v in 0..n {
            if chain.contains(&v) {
                continue;
            }
            let next = &sum + simples.simple(v);
            if c.is_positive_root(&next) && c.is_positive_root(&(gamma - &next)) {
                let mut ch = chain.clone();
                ch.push(v);
                stack.push((ch, next));
            }
        }
    }
    report
}

/// Coefficient checks for each compact simple root `gamma = sum c_i alpha_i`:
/// (a) `c_i (alpha_i, alpha_i) >= (gamma, gamma)` when `c_i != 0`;
/// (b) `2(xi_i, gamma)/(gamma, gamma)` is 0, 1 or 2;
/// (c) `2(xi_i, gamma)/(gamma, gamma)` is an integer for every fundamental weight.
pub fn check_lemma31(c: &Chamber) -> VerificationReport {
    let mut report = VerificationReport::new("coefficient-lemma");
    let simples = c.simples();
    for gamma in compact_simple_roots(c) {
        let Ok(Some(coeffs)) = simples.integer_coordinates(&gamma) else {
            report.fail(Finding::new(
                c.label(),
                Some(gamma.clone()),
                "not in the root lattice".into(),
            ));
            continue;
        };
        let g2 = gamma.norm2();
        for (i, &ci) in coeffs.iter().enumerate() {
            report.checked += 1;
            if ci != 0 && q(ci) * simples.norm2(i) < g2 {
                report.fail(Finding::new(
                    c.label(),
                    Some(gamma.clone()),
                    format!("(a) fails at i = {}: c_i = {ci}", i + 1),
                ));
            }
            let b = q(2) * c.fundamental_weights[i].dot(&gamma) / &g2;
            match to_i64(&b) {
                Some(0..=2) => {}
                Some(v) => report.fail(Finding::new(
                    c.label(),
                    Some(gamma.clone()),
                    format!("(b) fails at i = {}: value {v}", i + 1),
                )),
                None => {
                    report.fail(Finding::new(
                        c.label(),
                        Some(gamma.clone()),
                        format!("(b) fails at i = {}: value {b}", i + 1),
                    ));
                    report.fail(Finding::new(
                        c.label(),
                        Some(gamma.clone()),
                        format!("(c) fails on xi_{}: value {b}", i + 1),
                    ));
                }
            }
        }
    }
    report
}

/// Runs the classification, component and coefficient checks over every
/// chamber of an equal-rank form.
pub fn check_all_lemmas(spec: &GroupSpec, chambers: &[Chamber]) -> VerificationReport {
    let mut report = VerificationReport::new("lemmas");
    report.group = Some(spec.label());
    for c in chambers {
        for gamma in compact_simple_roots(c) {
            report.checked += 1;
            match classify_k_simple(spec, c, &gamma) {
                Ok(_) => {}
                Err(e) => report.fail(Finding::new(c.label(), Some(gamma.clone()), e.to_string())),
            }
            report.absorb(check_component_lemma(c, &gamma));
        }
        report.absorb(check_lemma31(c));
    }
    report
}

/// Which lattice the enumeration of K-types runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeKind {
    /// Integer combinations of the fundamental weights of `Delta+(g,t)`.
    GIntegral,
    /// Integer combinations of the fundamental weights of `Delta+(k,t)`.
    KWeights,
}

/// One positive system `Delta+(g,t)` of restricted roots containing `Delta+(k,t)`.
#[derive(Debug, Clone)]
pub struct RestrictedCase {
    pub label: String,
    pub word: Vec<usize>,
    pub g_simples: SimpleBasis,
    pub fundamental_weights: Vec<Weight>,
    /// Positive `t`-weights of `p` in this case, multiplicity one each.
    pub p_positive: Vec<Weight>,
    pub rho_n: Weight,
}

#[derive(Debug, Clone)]
pub struct RestrictedData {
    pub spec: GroupSpec,
    pub k_positive: Vec<Weight>,
    /// `Delta+(p,t)` of the first case, as listed.
    pub p_positive: Vec<Weight>,
    pub k_simples: SimpleBasis,
    /// Fundamental weights of `Delta+(k,t)`.
    pub varpi: Vec<Weight>,
    pub rho_c: Weight,
    pub cases: Vec<RestrictedCase>,
    pub lattice: LatticeKind,
}

fn dedup_sorted(mut v: Vec<Weight>) -> Vec<Weight> {
    v.sort();
    v.dedup();
    v
}

/// Restricted-root tables of the non-equal-rank forms.
pub fn restricted_tables(spec: &GroupSpec) -> Result<RestrictedData> {
    spec.validate()?;
    let n = spec.rank();
    let e = |i: usize| Weight::unit(n, i);
    let pm_pairs = |range_i: &dyn Fn(usize, usize) -> bool| -> Vec<Weight> {
        let mut v = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if range_i(i, j) {
                    v.push(&e(i) - &e(j));
                    v.push(&e(i) + &e(j));
                }
            }
        }
        v
    };
    let shorts = |r: std::ops::Range<usize>| r.map(e).collect::<Vec<_>>();
    let doubles = || (0..n).map(|i| e(i).scale_int(2)).collect::<Vec<_>>();

    let (k_positive, p_positive, initial, lattice) = match *spec {
        GroupSpec::SlOddR { .. } => {
            let k: Vec<Weight> = pm_pairs(&|_, _| true)
                .into_iter()
                .chain(shorts(0..n))
                .collect();
            let p = k.iter().cloned().chain(doubles()).collect();
            (k, p, RootType::B(n), LatticeKind::KWeights)
        }
        GroupSpec::SlEvenR { .. } => {
            let k = pm_pairs(&|_, _| true);
            let p = k.iter().cloned().chain(doubles()).collect();
            (k, p, RootType::C(n), LatticeKind::KWeights)
        }
        GroupSpec::SlH { .. } => {
            let p = pm_pairs(&|_, _| true);
            let k = p.iter().cloned().chain(doubles()).collect();
            (k, p, RootType::C(n), LatticeKind::KWeights)
        }
        GroupSpec::So2p1_2q1 { p, .. } => {
            // k = so(2p+1) + so(2q+1): blocks {1..p} and {p+1..p+q}.
            let same_block = move |i: usize, j: usize| (i < p) == (j < p);
            let k = pm_pairs(&same_block)
                .into_iter()
                .chain(shorts(0..n))
                .collect();
            let cross = pm_pairs(&|i, j| !same_block(i, j))
                .into_iter()
                .chain(shorts(0..n))
                .collect();
            (k, cross, RootType::B(n), LatticeKind::GIntegral)
        }
        _ => {
            return Err(Error::Unsupported {
                group: spec.to_string(),
                reason: "restricted tables exist for non-equal-rank forms only",
            })
        }
    };

    let k_positive = dedup_sorted(k_positive);
    let p_positive = dedup_sorted(p_positive);
    // Dynkin order, so that the k fundamental weights carry their usual labels.
    let ordered = match *spec {
        GroupSpec::SlOddR { .. } => RootType::B(n).simple_roots(),
        GroupSpec::SlEvenR { .. } => RootType::D(n).simple_roots(),
        GroupSpec::SlH { .. } => RootType::C(n).simple_roots(),
        GroupSpec::So2p1_2q1 { p, .. } => (0..n)
            .map(|i| {
                if i + 1 == p || i + 1 == n {
                    e(i)
                } else {
                    &e(i) - &e(i + 1)
                }
            })
            .collect(),
        _ => unreachable!("equal-rank forms were rejected above"),
    };
    debug_assert_eq!(dedup_sorted(ordered.clone()), indecomposables(&k_positive));
    let k_simples = SimpleBasis::new(ordered)?;
    let varpi = k_simples.fundamental_weights();
    let rho_c = half_sum(&k_positive, n);

    let p_all: Vec<Weight> = p_positive.iter().flat_map(|r| [r.clone(), -r]).collect();
    let roots: Vec<Weight> = dedup_sorted(
        k_positive
            .iter()
            .chain(&p_positive)
            .flat_map(|r| [r.clone(), -r])
            .collect(),
    );
    let systems = enumerate_positive_systems(&roots, &initial.simple_basis(), &k_positive)?;
    let cases = systems
        .into_iter()
        .enumerate()
        .map(|(idx, (g_simples, word))| {
            let xi = g_simples.fundamental_weights();
            let reg = Weight::sum(n, &xi);
            let p_pos = dedup_sorted(
                p_all
                    .iter()
                    .filter(|w| w.dot(&reg).is_positive())
                    .cloned()
                    .collect(),
            );
            let rho_n = half_sum(&p_pos, n);
            RestrictedCase {
                label: case_label(spec, idx, &word),
                word,
                g_simples,
                fundamental_weights: xi,
                p_positive: p_pos,
                rho_n,
            }
        })
        .collect();

    Ok(RestrictedData {
        spec: *spec,
        k_positive,
        p_positive,
        k_simples,
        varpi,
        rho_c,
        cases,
        lattice,
    })
}

fn case_label(spec: &GroupSpec, idx: usize, word: &[usize]) -> String {
    if matches!(spec, GroupSpec::SlEvenR { .. }) {
        return ["Case I", "Case II"]
            .get(idx)
            .map_or_else(|| format!("case {idx}"), |s| s.to_string());
    }
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter()
            .map(|i| format!("s{}", i + 1))
            .collect::<Vec<_>>()
            .join(".")
    }
}
