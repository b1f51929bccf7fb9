//! Virtual sampling.
//!
//! Each source is read as a distribution of sample means drawn from an
//! underlying population with the smallest source variance `v*`. A source with
//! variance `v_i` then corresponds to a (possibly fractional) sample of size
//! `n_i = v* / v_i`, so the most certain source has `n_i = 1`.
//!
//! The resultant value is the sample-size weighted mean `m`. For the resultant
//! uncertainty every source contributes its expected squared distance to `m`,
//! `u_i = v* + (m_i - m)^2`; the weighted average `u_bar` is treated as the
//! variance of a pooled population, and a sample of the total size `n` from it
//! has variance `v = u_bar / n`. The resultant standard deviation is `sqrt(v)`.

use serde::Serialize;

use super::CombineError;
use crate::estimates::{CalibrationPolicy, CombinedEstimate, Method, SourceEstimate};

/// Intermediate quantities of one virtual-sampling evaluation.
///
/// Per-source vectors are aligned with the input order. Everything is in
/// calibrated (standard deviation) units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VirtualSamplingDiagnostics {
    /// Smallest variance among sources with finite uncertainty.
    pub v_star: f64,
    /// `n_i` for each source, in `[0, 1]`.
    pub sample_sizes: Vec<f64>,
    /// Total sample size, at least 1.
    pub n: f64,
    /// `u_i = v* + (m_i - m)^2`. Sources with `n_i = 0` carry a value but do
    /// not enter `u_bar`.
    pub u_values: Vec<f64>,
    pub u_bar: f64,
    /// Sample-size weighted variance of the source values about `m`.
    pub between_variance: f64,
    /// Resultant variance `u_bar / n`.
    pub v: f64,
}

/// Splits `u_bar` into the individual-variance term `v*` and the disagreement
/// term.
pub fn decompose(diagnostics: &VirtualSamplingDiagnostics) -> (f64, f64) {
    (diagnostics.v_star, diagnostics.between_variance)
}

/// Sample sizes and `v*` from calibrated standard deviations.
///
/// Utterly uncertain sources get `n_i = 0`. When some source has zero variance,
/// every zero-variance source gets `n_i = 1` and all others `n_i = 0`.
fn sample_sizes(sigmas: &[f64]) -> Option<(f64, Vec<f64>)> {
    let sd_min = sigmas
        .iter()
        .copied()
        .filter(|s| s.is_finite())
        .fold(None, |acc: Option<f64>, s| Some(acc.map_or(s, |a| a.min(s))))?;

    let sizes = sigmas
        .iter()
        .map(|&s| {
            if !s.is_finite() {
                0.0
            } else if sd_min == 0.0 {
                if s == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                let r = sd_min / s;
                r * r
            }
        })
        .collect();
    Some((sd_min * sd_min, sizes))
}

/// Combines estimates by virtual sampling, returning the resultant together
/// with every intermediate quantity.
///
/// Fails with [`CombineError::NoInformativeSources`] when the input is empty or
/// every source is utterly uncertain.
pub fn combine_virtual_sampling(
    estimates: &[SourceEstimate],
    policy: &CalibrationPolicy,
) -> Result<(CombinedEstimate, VirtualSamplingDiagnostics), CombineError> {
    let sigmas: Vec<f64> = estimates.iter().map(|e| policy.calibrate(e)).collect();
    let (v_star, sizes) = sample_sizes(&sigmas).ok_or(CombineError::NoInformativeSources)?;

    let n: f64 = sizes.iter().sum();
    let m = estimates
        .iter()
        .zip(&sizes)
        .map(|(e, &w)| w * e.value())
        .sum::<f64>()
        / n;

    let sq_dist: Vec<f64> = estimates
        .iter()
        .map(|e| {
            let d = e.value() - m;
            d * d
        })
        .collect();
    let u_values: Vec<f64> = sq_dist.iter().map(|d2| v_star + d2).collect();

    let weighted = |xs: &[f64]| xs.iter().zip(&sizes).map(|(x, w)| w * x).sum::<f64>() / n;
    let u_bar = weighted(&u_values);
    let between_variance = weighted(&sq_dist);
    let v = u_bar / n;

    let combined = CombinedEstimate {
        value: m,
        uncertainty: policy.decalibrate(v.sqrt()),
        method: Method::VirtualSampling,
    };
    let diagnostics = VirtualSamplingDiagnostics {
        v_star,
        sample_sizes: sizes,
        n,
        u_values,
        u_bar,
        between_variance,
        v,
    };
    Ok((combined, diagnostics))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ests(pairs: &[(f64, f64)]) -> Vec<SourceEstimate> {
        pairs
            .iter()
            .map(|&(m, s)| SourceEstimate::new(m, s).unwrap())
            .collect()
    }

    fn run(pairs: &[(f64, f64)]) -> (CombinedEstimate, VirtualSamplingDiagnostics) {
        combine_virtual_sampling(&ests(pairs), &CalibrationPolicy::default()).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs()) + 1e-15
    }

    #[test]
    fn two_source_worked_example() {
        // exact: n = 5/4, m = 1/5, u = (26/25, 41/25), u_bar = 29/25, v = 116/125
        let (c, d) = run(&[(0.0, 1.0), (1.0, 2.0)]);
        assert!((c.value - 0.2).abs() <= 1e-12);
        assert_eq!(d.sample_sizes, vec![1.0, 0.25]);
        assert_eq!(d.n, 1.25);
        assert!(close(d.u_values[0], 26.0 / 25.0));
        assert!(close(d.u_values[1], 41.0 / 25.0));
        assert!(close(d.u_bar, 29.0 / 25.0));
        assert!(close(d.v, 116.0 / 125.0));
        assert!(close(c.uncertainty, (116.0f64 / 125.0).sqrt()));
        // n_1 : n_2 = 4 : 1 for standard deviations in a 1:2 ratio
        assert_eq!(d.sample_sizes[0] / d.sample_sizes[1], 4.0);

        let (individual, disagreement) = decompose(&d);
        assert_eq!(individual, 1.0);
        assert!(close(disagreement, 0.16));
    }

    #[test]
    fn sharpest_pair_losing_precision_can_shrink_the_resultant() {
        // The changed pair sits closest to m and sets v*, so raising its
        // uncertainty lifts the outer n_i and the resultant narrows.
        let (a, _) = run(&[(-2.7, 0.7), (2.7, 0.7), (-3.5, 1.8), (3.5, 1.8)]);
        let (b, _) = run(&[(-2.7, 0.98), (2.7, 0.98), (-3.5, 1.8), (3.5, 1.8)]);
        assert_eq!((a.value, b.value), (0.0, 0.0));
        assert!(close(a.uncertainty.powi(2), 12_737_169.0 / 3_478_225.0));
        assert!(close(b.uncertainty.powi(2), 9_977_824_053.0 / 2_756_775_025.0));
        assert!(b.uncertainty < a.uncertainty);
    }

    #[test]
    fn single_source() {
        let (c, d) = run(&[(5.0, 3.0)]);
        assert_eq!((c.value, c.uncertainty), (5.0, 3.0));
        assert_eq!((d.n, d.u_bar, d.v), (1.0, 9.0, 9.0));
        assert_eq!(decompose(&d), (9.0, 0.0));
    }

    #[test]
    fn identical_sources_shrink_by_root_k() {
        let (c, d) = run(&[(2.0, 1.0); 4]);
        assert_eq!((c.value, c.uncertainty), (2.0, 0.5));
        assert_eq!(d.u_bar, d.v_star);
        assert_eq!(decompose(&d), (1.0, 0.0));
    }

    #[test]
    fn zero_variance_source_dominates() {
        let (c, d) = run(&[(0.0, 0.0), (10.0, 5.0)]);
        assert_eq!((c.value, c.uncertainty), (0.0, 0.0));
        assert_eq!(d.sample_sizes, vec![1.0, 0.0]);
        assert_eq!((d.v_star, d.n, d.u_bar), (0.0, 1.0, 0.0));
    }

    #[test]
    fn disagreeing_certain_sources_average() {
        let (c, d) = run(&[(0.0, 0.0), (2.0, 0.0), (50.0, 1.0)]);
        assert_eq!(d.sample_sizes, vec![1.0, 1.0, 0.0]);
        assert_eq!(c.value, 1.0);
        // u_bar = 1, n = 2
        assert_eq!(d.between_variance, 1.0);
        assert!(close(c.uncertainty, 0.5f64.sqrt()));
    }

    #[test]
    fn utterly_uncertain_sources_are_ignored() {
        let base = run(&[(0.0, 1.0), (1.0, 2.0)]);
        let with = run(&[(0.0, 1.0), (1.0, 2.0), (100.0, f64::INFINITY)]);
        assert_eq!(base.0.value, with.0.value);
        assert_eq!(base.0.uncertainty, with.0.uncertainty);
        assert_eq!(with.1.sample_sizes[2], 0.0);
    }

    #[test]
    fn no_informative_sources() {
        let p = CalibrationPolicy::default();
        assert_eq!(
            combine_virtual_sampling(&[], &p).unwrap_err(),
            CombineError::NoInformativeSources
        );
        let all_utter = ests(&[(1.0, f64::INFINITY), (2.0, f64::INFINITY)]);
        assert_eq!(
            combine_virtual_sampling(&all_utter, &p).unwrap_err(),
            CombineError::NoInformativeSources
        );
    }

    #[test]
    fn tied_minimum_variance() {
        let (_, d) = run(&[(0.0, 1.0), (3.0, 1.0), (1.0, 2.0)]);
        assert_eq!(d.sample_sizes, vec![1.0, 1.0, 0.25]);
    }

    #[test]
    fn calibration_round_trips_output_scale() {
        let input = ests(&[(0.0, 1.96), (1.0, 3.92)]);
        let p = CalibrationPolicy::new(1.0 / 1.96).unwrap();
        let (c, d) = combine_virtual_sampling(&input, &p).unwrap();
        let (unit, _) = run(&[(0.0, 1.0), (1.0, 2.0)]);
        assert!(close(c.value, unit.value));
        assert!(close(c.uncertainty, unit.uncertainty * 1.96));
        // diagnostics stay in standard-deviation units
        assert!(close(d.v_star, 1.0));
    }

    #[test]
    fn near_agreeing_pair_beats_both_sources() {
        let (c, _) = run(&[(0.0, 1.0), (0.1, 1.0)]);
        assert!(c.uncertainty < 1.0);
    }
}
