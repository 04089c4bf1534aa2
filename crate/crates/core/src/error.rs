use thiserror::Error;

use crate::lattice::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate root: (alpha, alpha) must be positive")]
    DegenerateRoot,

    #[error("simple roots are linearly dependent")]
    DependentSimples,

    #[error("Cartan integer a[{i}][{j}] = {value} is not a non-positive integer")]
    BadCartanInteger { i: usize, j: usize, value: String },

    #[error("{group}: rank out of scope ({bound})")]
    RankOutOfScope { group: String, bound: &'static str },

    #[error("{group}: unsupported operation ({reason})")]
    Unsupported { group: String, reason: &'static str },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not in the admissible weight lattice")]
    NotIntegral(Weight),

    #[error("{0} is not k-dominant")]
    NotKDominant(Weight),

    #[error("mu + 2rho_c = {0} is not g-dominant")]
    NotGDominant(Weight),

    #[error("{0} is not a root")]
    NotARoot(Weight),

    #[error("classification failure in chamber {word:?}: gamma = {gamma} matches no case")]
    ClassificationFailure { word: Vec<usize>, gamma: Weight },

    #[error("rank {rank} exceeds the exact-LP oracle guard (rank <= {max})")]
    RankGuard { rank: usize, max: usize },

    #[error("singular linear system")]
    Singular,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
