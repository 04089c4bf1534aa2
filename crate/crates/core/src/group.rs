//! A resolved real form: its chambers (equal rank) or restricted cases, each
//! reduced to a [`Frame`] carrying exactly the data the smallness and
//! non-decreasability tests consume.

use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ktype::{compact_simple_roots, restricted_tables, LatticeKind, RestrictedData};
use crate::lattice::{pair, q, SimpleBasis, Weight, Q};
use crate::rootsys::GroupSpec;
use crate::smallness::Hull;
use crate::vogan::{enumerate_chambers, Chamber};

/// One positive system `Delta+(g,t)` containing `Delta+(k,t)`.
#[derive(Debug, Clone)]
pub struct Frame {
    pub label: String,
    pub word: Vec<usize>,
    pub g_simples: SimpleBasis,
    /// Fundamental weights of `g_simples`.
    pub xi: Vec<Weight>,
    pub k_simples: Vec<Weight>,
    pub rho_c: Weight,
    pub rho_n: Weight,
    /// Integer combinations of these are the admissible weights.
    pub lattice: Vec<Weight>,
    pub lattice_kind: LatticeKind,
}

impl Frame {
    pub fn from_chamber(c: &Chamber) -> Frame {
        Frame {
            label: c.label(),
            word: c.word.clone(),
            g_simples: c.simples().clone(),
            xi: c.fundamental_weights.clone(),
            k_simples: compact_simple_roots(c),
            rho_c: c.rho_c.clone(),
            rho_n: c.rho_n.clone(),
            lattice: c.fundamental_weights.clone(),
            lattice_kind: LatticeKind::GIntegral,
        }
    }

    fn from_restricted(data: &RestrictedData, idx: usize) -> Frame {
        let case = &data.cases[idx];
        let lattice = match data.lattice {
            LatticeKind::GIntegral => case.fundamental_weights.clone(),
            LatticeKind::KWeights => data.varpi.clone(),
        };
        Frame {
            label: case.label.clone(),
            word: case.word.clone(),
            g_simples: case.g_simples.clone(),
            xi: case.fundamental_weights.clone(),
            k_simples: data.k_simples.to_vec(),
            rho_c: data.rho_c.clone(),
            rho_n: case.rho_n.clone(),
            lattice,
            lattice_kind: data.lattice,
        }
    }

    pub fn rank(&self) -> usize {
        self.g_simples.rank()
    }

    pub fn dim(&self) -> usize {
        self.g_simples.dim()
    }

    pub fn two_rho_c(&self) -> Weight {
        self.rho_c.scale_int(2)
    }

    pub fn two_rho_n(&self) -> Weight {
        self.rho_n.scale_int(2)
    }

    /// `pair(mu, gamma)` for every k-simple `gamma`.
    pub fn k_pairings(&self, mu: &Weight) -> Result<Vec<Q>> {
        self.k_simples.iter().map(|g| pair(mu, g)).collect()
    }

    pub fn is_k_dominant(&self, mu: &Weight) -> Result<bool> {
        Ok(self.k_pairings(mu)?.iter().all(|x| !x.is_negative()))
    }

    pub fn is_g_dominant(&self, mu: &Weight) -> Result<bool> {
        self.g_simples.is_dominant(mu)
    }

    /// Coordinates of `mu` in the lattice basis, when `mu` lies in its span.
    pub fn lattice_coordinates(&self, mu: &Weight) -> Result<Option<Vec<Q>>> {
        let coords = match self.lattice_kind {
            LatticeKind::GIntegral => self.g_simples.pairings(mu)?,
            LatticeKind::KWeights => self.k_pairings(mu)?,
        };
        let back = self
            .lattice
            .iter()
            .zip(&coords)
            .fold(Weight::zero(self.dim()), |acc, (l, c)| acc.add_scaled(c, l));
        Ok((back == *mu).then_some(coords))
    }

    pub fn is_integral(&self, mu: &Weight) -> Result<bool> {
        Ok(self
            .lattice_coordinates(mu)?
            .is_some_and(|c| c.iter().all(|x| x.is_integer())))
    }

    /// Coefficients of `mu` in the fundamental weights `xi`.
    pub fn fw_coordinates(&self, mu: &Weight) -> Result<Vec<Q>> {
        self.g_simples.pairings(mu)
    }

    pub fn from_fw_coordinates(&self, coeffs: &[Q]) -> Result<Weight> {
        if coeffs.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: coeffs.len(),
            });
        }
        Ok(self
            .xi
            .iter()
            .zip(coeffs)
            .fold(Weight::zero(self.dim()), |acc, (x, c)| acc.add_scaled(c, x)))
    }
}

/// A real form with every chamber (or restricted case) resolved.
#[derive(Debug)]
pub struct Group {
    pub spec: GroupSpec,
    pub chambers: Vec<Chamber>,
    pub restricted: Option<RestrictedData>,
    pub frames: Vec<Frame>,
    hull: OnceLock<Hull>,
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Group> {
        spec.validate()?;
        if spec.is_equal_rank() {
            Group::from_chambers(spec, enumerate_chambers(&spec)?)
        } else {
            let data = restricted_tables(&spec)?;
            let frames = (0..data.cases.len())
                .map(|i| Frame::from_restricted(&data, i))
                .collect();
            Ok(Group {
                spec,
                chambers: Vec::new(),
                restricted: Some(data),
                frames,
                hull: OnceLock::new(),
            })
        }
    }

    /// Builds from chambers enumerated earlier (for instance read from a cache).
    pub fn from_chambers(spec: GroupSpec, chambers: Vec<Chamber>) -> Result<Group> {
        if chambers.is_empty() {
            return Err(Error::Precondition(
                "a group needs at least one chamber".into(),
            ));
        }
        let frames = chambers.par_iter().map(Frame::from_chamber).collect();
        Ok(Group {
            spec,
            chambers,
            restricted: None,
            frames,
            hull: OnceLock::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.frames[0].rank()
    }

    pub fn dim(&self) -> usize {
        self.frames[0].dim()
    }

    pub fn is_equal_rank(&self) -> bool {
        self.restricted.is_none()
    }

    /// Type A weights live in the trace-zero plane.
    pub fn trace_zero(&self) -> bool {
        self.spec.trace_zero()
    }

    /// Projection to the plane of the roots, with the central component
    /// `trace / dim` when it is non-zero.
    pub fn normalize(&self, mu: &Weight) -> Result<(Weight, Option<Q>)> {
        if mu.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: mu.dim(),
            });
        }
        if !self.trace_zero() {
            return Ok((mu.clone(), None));
        }
        let central = mu.trace() / q(mu.dim() as i64);
        Ok((
            mu.project_trace_zero(),
            (!central.is_zero()).then_some(central),
        ))
    }

    pub fn hull(&self) -> &Hull {
        self.hull.get_or_init(|| Hull::new(self))
    }

    pub fn frame_by_label(&self, label: &str) -> Option<&Frame> {
        self.frames.iter().find(|f| f.label == label)
    }

    /// Convention notes attached to every result for the restricted families.
    pub fn convention(&self) -> Option<&'static str> {
        self.restricted.as_ref().map(|d| match d.lattice {
            LatticeKind::KWeights => {
                "restricted roots with multiplicity one as listed; W of the reduced system; weights are integer combinations of the k fundamental weights"
            }
            LatticeKind::GIntegral => {
                "restricted roots with multiplicity one as listed; W of the reduced system; weights are g-integral"
            }
        })
    }
}
