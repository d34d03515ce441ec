use thiserror::Error;

use crate::metaplectic::DisentangledFactors;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("dimension mismatch: {0} vs {1}")]
    ShapeMismatch(usize, usize),

    #[error("non-finite matrix entries")]
    NonFinite,

    #[error("singular parameters: {0}")]
    SingularParams(String),

    #[error("degenerate vacuum: the normalization radicand |m^2-eps^2| + p^2*sign(eps^2-m^2) vanishes")]
    DegenerateVacuum,

    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),

    #[error("parameter outside the open unit disk: {0}")]
    OutOfDisk(String),

    #[error("zero state has no number distribution")]
    ZeroState,

    #[error("quadrature nodes insufficient: {0}")]
    QuadratureConfig(String),

    #[error(
        "conjugated annihilator is not in span{{a, a+}}: residual {residual:e} exceeds {tol:e} at scale {scale:e}"
    )]
    NotBogoliubov { residual: f64, scale: f64, tol: f64 },

    #[error(
        "disentangling failed oracle validation on both branches: \
         delta-form deviation {:e}, su(1,1)-form deviation {:e} (tol {:e})",
        .0.paper_deviation, .0.substituted_deviation, .0.tol
    )]
    DisentangleFailed(Box<DisentangleFailure>),
}

/// Both candidate factorizations of a failed disentangling, kept so the
/// caller can inspect and report them.
#[derive(Debug, Clone)]
pub struct DisentangleFailure {
    pub paper: DisentangledFactors,
    pub paper_deviation: f64,
    pub substituted: DisentangledFactors,
    pub substituted_deviation: f64,
    pub tol: f64,
}
