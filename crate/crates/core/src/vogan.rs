//! Vogan diagrams and the positive systems `Delta+(g,t)` that contain the
//! fixed compact positive system `Delta+(k,t)`.
//!
//! Chambers are reached from the initial diagram by reflecting at painted
//! (non-compact) simple roots, updating the painting by the local rule for
//! neighbours. Compactness of an arbitrary root is read off by the parity of
//! its painted coefficients.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lattice::{SimpleBasis, Weight};
use crate::rootsys::{build_root_system, half_sum, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoganDiagram {
    pub simples: SimpleBasis,
    /// `true` marks a non-compact (painted) vertex.
    pub painted: Vec<bool>,
}

impl VoganDiagram {
    pub fn new(simples: SimpleBasis, painted: Vec<bool>) -> Result<Self> {
        if painted.len() != simples.rank() {
            return Err(Error::Precondition(format!(
                "painting has {} entries for {} simple roots",
                painted.len(),
                simples.rank()
            )));
        }
        Ok(VoganDiagram { simples, painted })
    }

    pub fn rank(&self) -> usize {
        self.painted.len()
    }

    pub fn painted_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.painted
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(|(i, _)| i)
    }
}

/// One-based vertex painted in the standard diagram of an equal-rank form.
pub fn initial_painted_vertex(spec: &GroupSpec) -> Result<usize> {
    spec.validate()?;
    Ok(match *spec {
        GroupSpec::Su { p, .. } => p,
        GroupSpec::So2n1 { n } | GroupSpec::SpR { n } | GroupSpec::SoStar { n } => n,
        GroupSpec::So2p2q1 { p, .. } | GroupSpec::Sp { p, .. } => p,
        // Vertices n-1 and n belong to so*(2n); min(p,q) <= n-2 always.
        GroupSpec::So2p2q { p, q } => p.min(q),
        _ => {
            return Err(Error::Unsupported {
                group: spec.to_string(),
                reason: "non-equal-rank forms have no Vogan diagram; use the restricted tables",
            })
        }
    })
}

pub fn initial_diagram(spec: &GroupSpec) -> Result<VoganDiagram> {
    let vertex = initial_painted_vertex(spec)?;
    let t = spec.root_type();
    let painted = (1..=t.rank()).map(|i| i == vertex).collect();
    VoganDiagram::new(t.simple_basis(), painted)
}

/// Reflects the diagram at the painted vertex `i` (zero-based).
///
/// The vertex itself and non-neighbours keep their colour; neighbours flip,
/// except a longer neighbour joined by a double edge, which keeps its colour.
pub fn reflect_diagram(d: &VoganDiagram, i: usize) -> Result<VoganDiagram> {
    if i >= d.rank() || !d.painted[i] {
        return Err(Error::Precondition(format!(
            "reflection at vertex {} requires a painted vertex",
            i + 1
        )));
    }
    let b = &d.simples;
    let simples: Vec<Weight> = (0..d.rank()).map(|j| b.reflect(b.simple(j), i)).collect();
    let painted = (0..d.rank())
        .map(|j| {
            if !b.adjacent(i, j) {
                return d.painted[j];
            }
            let double = b.cartan(i, j) * b.cartan(j, i) == 2;
            let longer = b.norm2(j) > b.norm2(i);
            if double && longer {
                d.painted[j]
            } else {
                !d.painted[j]
            }
        })
        .collect();
    VoganDiagram::new(SimpleBasis::new(simples)?, painted)
}

/// A positive system `Delta+(g,t)` containing the fixed `Delta+(k,t)`.
#[derive(Debug, Clone)]
pub struct Chamber {
    pub diagram: VoganDiagram,
    /// Sorted canonically (lexicographic on exact coordinates).
    pub positive_roots: Vec<Weight>,
    /// Simple-root coordinates of `positive_roots[k]` in this chamber.
    pub coeffs: Vec<Vec<i64>>,
    /// Parity-rule compactness of `positive_roots[k]`.
    pub compact: Vec<bool>,
    pub rho: Weight,
    pub rho_c: Weight,
    pub rho_n: Weight,
    pub fundamental_weights: Vec<Weight>,
    /// Painted vertices reflected at, starting from the initial chamber.
    pub word: Vec<usize>,
}

impl Chamber {
    /// Derives everything else from the diagram and the full root list.
    pub fn from_diagram(
        diagram: VoganDiagram,
        word: Vec<usize>,
        all_roots: &[Weight],
    ) -> Result<Chamber> {
        let fundamental_weights = diagram.simples.fundamental_weights();
        let dim = diagram.simples.dim();
        let regular = Weight::sum(dim, &fundamental_weights);
        let mut positive_roots: Vec<Weight> = all_roots
            .iter()
            .filter(|r| r.dot(&regular).is_positive())
            .cloned()
            .collect();
        positive_roots.sort();
        let mut coeffs = Vec::with_capacity(positive_roots.len());
        let mut compact = Vec::with_capacity(positive_roots.len());
        for r in &positive_roots {
            let c = diagram
                .simples
                .integer_coordinates(r)?
                .ok_or_else(|| Error::NotARoot(r.clone()))?;
            compact.push(parity_compact(&c, &diagram.painted));
            coeffs.push(c);
        }
        let pick = |want: bool| -> Vec<Weight> {
            positive_roots
                .iter()
                .zip(&compact)
                .filter(|(_, &c)| c == want)
                .map(|(r, _)| r.clone())
                .collect()
        };
        let rho = half_sum(&positive_roots, dim);
        let rho_c = half_sum(&pick(true), dim);
        let rho_n = half_sum(&pick(false), dim);
        Ok(Chamber {
            diagram,
            positive_roots,
            coeffs,
            compact,
            rho,
            rho_c,
            rho_n,
            fundamental_weights,
            word,
        })
    }

    pub fn simples(&self) -> &SimpleBasis {
        &self.diagram.simples
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    pub fn compact_positive_roots(&self) -> Vec<Weight> {
        self.positive_roots
            .iter()
            .zip(&self.compact)
            .filter(|(_, &c)| c)
            .map(|(r, _)| r.clone())
            .collect()
    }

    pub fn noncompact_positive_roots(&self) -> Vec<Weight> {
        self.positive_roots
            .iter()
            .zip(&self.compact)
            .filter(|(_, &c)| !c)
            .map(|(r, _)| r.clone())
            .collect()
    }

    /// Index of a positive root, by binary search on the sorted list.
    pub fn position(&self, root: &Weight) -> Option<usize> {
        self.positive_roots.binary_search(root).ok()
    }

    pub fn is_positive_root(&self, v: &Weight) -> bool {
        self.position(v).is_some()
    }

    /// Human-readable chamber label: the reflection word, one-based.
    pub fn label(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word
                .iter()
                .map(|i| format!("s{}", i + 1))
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

fn parity_compact(coeffs: &[i64], painted: &[bool]) -> bool {
    let s: i64 = coeffs
        .iter()
        .zip(painted)
        .filter(|(_, &p)| p)
        .map(|(c, _)| c)
        .sum();
    s.rem_euclid(2) == 0
}

/// Compactness of a root by the parity of its painted coefficients.
pub fn is_compact_root(c: &Chamber, beta: &Weight) -> Result<bool> {
    let root = if c.is_positive_root(beta) {
        beta.clone()
    } else if c.is_positive_root(&-beta) {
        -beta
    } else {
        return Err(Error::NotARoot(beta.clone()));
    };
    let coeffs = c
        .simples()
        .integer_coordinates(&root)?
        .ok_or_else(|| Error::NotARoot(beta.clone()))?;
    Ok(parity_compact(&coeffs, &c.diagram.painted))
}

/// Breadth-first closure of the initial diagram under reflections at painted
/// vertices, deduplicated by positive-root set.
pub fn enumerate_chambers(spec: &GroupSpec) -> Result<Vec<Chamber>> {
    let rs = build_root_system(*spec)?;
    let all = rs.all_roots();
    let first = Chamber::from_diagram(initial_diagram(spec)?, Vec::new(), &all)?;
    let mut seen: HashSet<Vec<Weight>> = HashSet::new();
    seen.insert(first.positive_roots.clone());
    let mut queue = VecDeque::from([0usize]);
    let mut out = vec![first];
    while let Some(idx) = queue.pop_front() {
        let painted: Vec<usize> = out[idx].diagram.painted_vertices().collect();
        for i in painted {
            let d = reflect_diagram(&out[idx].diagram, i)?;
            let mut word = out[idx].word.clone();
            word.push(i);
            let c = Chamber::from_diagram(d, word, &all)?;
            if seen.insert(c.positive_roots.clone()) {
                out.push(c);
                queue.push_back(out.len() - 1);
            }
        }
    }
    Ok(out)
}

/// Diagram-free enumeration of every positive system of `roots` that contains
/// `fixed` (a positive system of a subsystem), by reflecting at simple roots
/// outside the subsystem. Returns simple bases with their reflection words.
///
/// `roots` may be non-reduced; positivity is decided against a regular
/// dominant element, and only indivisible roots are used as walls.
pub fn enumerate_positive_systems(
    roots: &[Weight],
    initial: &SimpleBasis,
    fixed: &[Weight],
) -> Result<Vec<(SimpleBasis, Vec<usize>)>> {
    let fixed_all: HashSet<Weight> = fixed.iter().flat_map(|r| [r.clone(), -r]).collect();
    let key = |b: &SimpleBasis| -> Vec<Weight> {
        let reg = Weight::sum(b.dim(), &b.fundamental_weights());
        let mut pos: Vec<Weight> = roots
            .iter()
            .filter(|r| r.dot(&reg).is_positive())
            .cloned()
            .collect();
        pos.sort();
        pos.dedup();
        pos
    };
    let mut seen = HashSet::from([key(initial)]);
    let mut out = vec![(initial.clone(), Vec::new())];
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let (basis, word) = out[idx].clone();
        for i in 0..basis.rank() {
            let a = basis.simple(i);
            if fixed_all.contains(a) {
                continue;
            }
            let next = SimpleBasis::new(
                (0..basis.rank())
                    .map(|j| basis.reflect(basis.simple(j), i))
                    .collect(),
            )?;
            let k = key(&next);
            if !fixed.iter().all(|f| k.binary_search(f).is_ok()) {
                continue;
            }
            if seen.insert(k) {
                let mut w = word.clone();
                w.push(i);
                out.push((next, w));
                queue.push_back(out.len() - 1);
            }
        }
    }
    Ok(out)
}

fn fact(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn order_b(n: usize) -> u128 {
    (1u128 << n) * fact(n)
}

/// `|W(D_n)|`, with the conventions `D_0 = D_1 = 1` (so(0), so(2)).
fn order_d(n: usize) -> u128 {
    if n <= 1 {
        1
    } else {
        (1u128 << (n - 1)) * fact(n)
    }
}

/// `|W(k,t)|` from the standard formula for the compact subgroup.
pub fn compact_weyl_order(spec: &GroupSpec) -> u128 {
    match *spec {
        GroupSpec::Su { p, q } => fact(p) * fact(q),
        GroupSpec::So2n1 { n } => order_d(n),
        GroupSpec::So2p2q1 { p, q } => order_d(p) * order_b(q),
        GroupSpec::SpR { n } | GroupSpec::SoStar { n } => fact(n),
        GroupSpec::Sp { p, q } => order_b(p) * order_b(q),
        GroupSpec::So2p2q { p, q } => order_d(p) * order_d(q),
        GroupSpec::SlOddR { n } => order_b(n),
        GroupSpec::SlEvenR { n } => order_d(n),
        GroupSpec::SlH { n } => order_b(n),
        GroupSpec::So2p1_2q1 { p, q } => order_b(p) * order_b(q),
    }
}

/// `|W(g,t)| / |W(k,t)|`: the expected number of chambers.
pub fn weyl_index(spec: &GroupSpec) -> u128 {
    spec.root_type().weyl_order() / compact_weyl_order(spec)
}

/// Map from a root to its compactness, read from one chamber.
pub fn compactness_table(c: &Chamber) -> HashMap<Weight, bool> {
    c.positive_roots
        .iter()
        .zip(&c.compact)
        .flat_map(|(r, &k)| [(r.clone(), k), (-r, k)])
        .collect()
}
