//! Rules that fold several source estimates into one resultant.
//!
//! | Rule | Value | Uncertainty |
//! |------|-------|-------------|
//! | [`combine_virtual_sampling`] | sample-size weighted mean | `sqrt(u_bar / n)` |
//! | [`combine_weighted_mean`] | inverse-variance weighted mean | pooled precision |
//! | [`combine_unweighted_mean`] | arithmetic mean | mean of finite uncertainties |
//! | [`combine_intersection`] | midpoint of the common part | its half-length |
//! | [`combine_cover`] | midpoint of the enclosing interval | its half-length |
//!
//! [`combine`] dispatches on [`Method`] and routes interval rules through
//! [`to_interval`](crate::estimates::to_interval).

mod interval;
mod mean;
mod sampling;

pub use interval::{combine_cover, combine_intersection};
pub use mean::{combine_unweighted_mean, combine_weighted_mean};
pub use sampling::{combine_virtual_sampling, decompose, VirtualSamplingDiagnostics};

use thiserror::Error;

use crate::estimates::{
    from_interval, to_interval, CalibrationPolicy, CombinedEstimate, Interval, Method,
    SourceEstimate,
};

/// Reasons a combination rule has no resultant for its input.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum CombineError {
    #[error("no sources")]
    EmptyInput,
    #[error("no informative sources")]
    NoInformativeSources,
    #[error("empty intersection (lower bound {lower} exceeds upper bound {upper})")]
    EmptyIntersection { lower: f64, upper: f64 },
    #[error("infinite cover")]
    InfiniteCover,
}

impl CombineError {
    /// Short, stable reason string used in reports.
    pub fn reason(&self) -> &'static str {
        match self {
            CombineError::EmptyInput => "no sources",
            CombineError::NoInformativeSources => "no informative sources",
            CombineError::EmptyIntersection { .. } => "empty intersection",
            CombineError::InfiniteCover => "infinite cover",
        }
    }
}

/// Runs `method` on `estimates`.
///
/// Interval rules see each estimate as `value ± calibrated uncertainty`; their
/// resultant half-length is mapped back through the inverse calibration so
/// every rule reports uncertainty on the input scale.
pub fn combine(
    method: Method,
    estimates: &[SourceEstimate],
    policy: &CalibrationPolicy,
) -> Result<CombinedEstimate, CombineError> {
    match method {
        Method::VirtualSampling => combine_virtual_sampling(estimates, policy).map(|(c, _)| c),
        Method::WeightedMean => combine_weighted_mean(estimates, policy),
        Method::UnweightedMean => combine_unweighted_mean(estimates),
        Method::Intersection | Method::Cover => {
            let intervals: Vec<Interval> =
                estimates.iter().map(|e| to_interval(e, policy)).collect();
            let resultant = if method == Method::Intersection {
                combine_intersection(&intervals)?
            } else {
                combine_cover(&intervals)?
            };
            let e = from_interval(&resultant);
            Ok(CombinedEstimate {
                value: e.value(),
                uncertainty: policy.decalibrate(e.uncertainty()),
                method,
            })
        }
    }
}
