//! Metaplectic layer: disentangling of quadratic exponentials, the
//! physical squeeze operator, Bogoliubov-coefficient extraction,
//! covering-parameter range reduction and the generator equivalences.

mod bch;
mod covering;
mod generators;
mod squeeze;

pub use bch::{
    bch_disentangle, oracle_exponential, paper_factors, standard_factors, BchCoefficients,
    DisentangleBranch, DisentangleReport, DisentangledFactors,
};
pub use covering::{normalize_covering, CoveringLevel, CoveringParameter};
pub use generators::{
    check_defining_relation, defining_relation_deviation, metaplectic_generators,
    sannikov_generators, sigma_matrices, DefiningRelationReport,
};
pub use squeeze::{
    extract_bogoliubov, squeeze_from_physics, BogoliubovExtraction, SqueezeFactors,
    Su11Coefficients,
};