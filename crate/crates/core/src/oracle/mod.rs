//! Independent checks on the virtual-sampling arithmetic.
//!
//! Two routes that share no code with [`crate::combinators`]:
//!
//! * the expected squared distance of a random variable to a point, in closed
//!   form and by Monte-Carlo sampling;
//! * the whole virtual-sampling chain re-evaluated in exact rational
//!   arithmetic.

mod exact;
mod monte_carlo;

pub use exact::{exact_virtual_sampling, ExactVirtualSampling, RationalEstimate};
pub use monte_carlo::{
    exact_expected_sq_distance, mc_expected_sq_distance, McConfig, McEstimate, SourceDistribution,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("variance must be finite and non-negative, got {0}")]
    InvalidVariance(f64),
    #[error("mean and target point must be finite")]
    NonFiniteMoment,
    #[error("no informative sources")]
    NoInformativeSources,
    #[error("value {0} has no exact rational form")]
    NotRational(f64),
}
