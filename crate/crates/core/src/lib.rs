//! Partial orders that measure information content on finite probability
//! distributions and density matrices.
//!
//! The simplex layer ([`simplex`]) provides validated distributions and
//! their elementary geometry. The order layer ([`orders`]) implements the
//! two renormalised Löwner orders, the Bayesian order, the parametrized
//! family of restricted information orders, sector-restricted
//! majorization, meets, feature vectors and graded entailment. The
//! measurement layer ([`measure`]) provides the strict monotone maps that
//! certify orders and rule out contradictions. The density layer
//! ([`density`]) lifts the simplex orders to simultaneously
//! diagonalisable density matrices. The checking layer ([`suite`])
//! verifies all of the axioms and cross-order claims at desk scale.

pub mod density;
pub mod error;
pub mod measure;
pub mod orders;
pub mod simplex;
pub mod suite;

pub use error::{Error, Result};
pub use measure::{mu_minus, mu_plus, Measurement};
pub use orders::{
    bayesian_leq, compare, feature_vector, graded_leq, graded_sup_p, lowner_minus_leq,
    lowner_plus_leq, majorization_leq, meet_leq, restricted_leq, validate_restricted_params,
    ComparisonResult, FeatureVector, OrderSpec, RestrictedParams, COMPARISON_SLACK,
};
pub use simplex::{
    common_sector_permutation, extrema, mix, monotone_retract, shannon_entropy, support_subset,
    Distribution, Extrema, MonotoneDistribution, Permutation, DEFAULT_VALIDATION_TOL,
};
