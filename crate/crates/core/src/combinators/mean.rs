//! Baseline mean rules.

use super::CombineError;
use crate::estimates::{CalibrationPolicy, CombinedEstimate, Method, SourceEstimate};

/// Inverse-variance weighted mean with classical pooled precision
/// `sqrt(1 / sum(1 / v_i))` as its uncertainty.
///
/// The pooled uncertainty ignores disagreement between sources. Utterly
/// uncertain sources get weight zero; if any source has zero variance, the
/// zero-variance sources share all the weight equally and the uncertainty is 0.
pub fn combine_weighted_mean(
    estimates: &[SourceEstimate],
    policy: &CalibrationPolicy,
) -> Result<CombinedEstimate, CombineError> {
    let sigmas: Vec<f64> = estimates.iter().map(|e| policy.calibrate(e)).collect();
    let sd_min = sigmas
        .iter()
        .copied()
        .filter(|s| s.is_finite())
        .reduce(f64::min)
        .ok_or(CombineError::NoInformativeSources)?;

    // Precisions relative to the most precise source keep the sums in range.
    let weights: Vec<f64> = sigmas
        .iter()
        .map(|&s| match (sd_min == 0.0, s) {
            (_, s) if s.is_infinite() => 0.0,
            (true, s) => f64::from(s == 0.0),
            (false, s) => (sd_min / s).powi(2),
        })
        .collect();
    let total: f64 = weights.iter().sum();
    let value = estimates
        .iter()
        .zip(&weights)
        .map(|(e, w)| w * e.value())
        .sum::<f64>()
        / total;
    let pooled_sd = sd_min / total.sqrt();

    Ok(CombinedEstimate {
        value,
        uncertainty: policy.decalibrate(pooled_sd),
        method: Method::WeightedMean,
    })
}

/// Plain arithmetic mean of the values; uncertainty is the arithmetic mean of
/// the finite uncertainties (`+inf` if there are none).
///
/// Ignores uncertainty entirely when forming the value.
pub fn combine_unweighted_mean(
    estimates: &[SourceEstimate],
) -> Result<CombinedEstimate, CombineError> {
    if estimates.is_empty() {
        return Err(CombineError::EmptyInput);
    }
    let value = estimates.iter().map(SourceEstimate::value).sum::<f64>() / estimates.len() as f64;
    let finite: Vec<f64> = estimates
        .iter()
        .map(SourceEstimate::uncertainty)
        .filter(|u| u.is_finite())
        .collect();
    let uncertainty = if finite.is_empty() {
        f64::INFINITY
    } else {
        finite.iter().sum::<f64>() / finite.len() as f64
    };
    Ok(CombinedEstimate {
        value,
        uncertainty,
        method: Method::UnweightedMean,
    })
}
