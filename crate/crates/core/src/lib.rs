//! Exact verification that non-decreasable K-types of classical real
//! reductive groups lie in the u-small convex hull.

pub mod error;
pub mod group;
pub mod ktype;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod nondecr;
pub mod report;
pub mod rootsys;
pub mod smallness;
pub mod vogan;

pub use error::{Error, Result};
pub use group::{Frame, Group};
pub use lattice::{SimpleBasis, Weight, Q};
pub use nondecr::{NonDecrCandidate, SearchBox};
pub use report::VerificationReport;
pub use rootsys::{GroupSpec, RootType};
pub use smallness::USmallCertificate;
