//! Source estimates, resultants, and the uncertainty calibration policy.
//!
//! A source contributes a value together with an uncertainty expressed in the
//! same units as the value. An uncertainty of `+inf` means the source professes
//! no knowledge at all ("utter uncertainty").

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numfmt;

/// Rejections raised while building estimates, intervals and policies.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimateError {
    #[error("value must be finite, got {0}")]
    NonFiniteValue(f64),
    #[error("uncertainty must be non-negative (or +inf), got {0}")]
    InvalidUncertainty(f64),
    #[error("half-length must be non-negative (or +inf), got {0}")]
    InvalidHalfLength(f64),
    #[error("sigma scale must be finite and positive, got {0}")]
    InvalidSigmaScale(f64),
}

fn check_spread(x: f64) -> bool {
    // NaN fails both comparisons
    x >= 0.0 && !x.is_nan()
}

/// One source's value estimate and its uncertainty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawEstimate")]
pub struct SourceEstimate {
    value: f64,
    #[serde(serialize_with = "numfmt::serialize_f64")]
    uncertainty: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Deserialize)]
struct RawEstimate {
    #[serde(deserialize_with = "numfmt::deserialize_f64")]
    value: f64,
    #[serde(deserialize_with = "numfmt::deserialize_f64")]
    uncertainty: f64,
    #[serde(default)]
    label: Option<String>,
}

impl TryFrom<RawEstimate> for SourceEstimate {
    type Error = EstimateError;

    fn try_from(raw: RawEstimate) -> Result<Self, Self::Error> {
        let e = SourceEstimate::new(raw.value, raw.uncertainty)?;
        Ok(match raw.label {
            Some(l) => e.with_label(l),
            None => e,
        })
    }
}

impl SourceEstimate {
    pub fn new(value: f64, uncertainty: f64) -> Result<Self, EstimateError> {
        if !value.is_finite() {
            return Err(EstimateError::NonFiniteValue(value));
        }
        if !check_spread(uncertainty) {
            return Err(EstimateError::InvalidUncertainty(uncertainty));
        }
        Ok(Self {
            value,
            uncertainty,
            label: None,
        })
    }

    /// A source that knows nothing about the parameter.
    pub fn utterly_uncertain(value: f64) -> Result<Self, EstimateError> {
        Self::new(value, f64::INFINITY)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn uncertainty(&self) -> f64 {
        self.uncertainty
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_utterly_uncertain(&self) -> bool {
        self.uncertainty == f64::INFINITY
    }
}

/// Maps a reported uncertainty `u` to a standard deviation `sigma_scale * u`.
///
/// The default scale of 1 reads uncertainty directly as a standard deviation.
/// Sources that report 95% half-widths would use `1 / 1.96`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CalibrationPolicy {
    sigma_scale: f64,
}

impl CalibrationPolicy {
    pub fn new(sigma_scale: f64) -> Result<Self, EstimateError> {
        if sigma_scale.is_finite() && sigma_scale > 0.0 {
            Ok(Self { sigma_scale })
        } else {
            Err(EstimateError::InvalidSigmaScale(sigma_scale))
        }
    }

    pub fn sigma_scale(&self) -> f64 {
        self.sigma_scale
    }

    /// Standard deviation implied by the source's uncertainty.
    pub fn calibrate(&self, estimate: &SourceEstimate) -> f64 {
        if estimate.uncertainty == f64::INFINITY {
            return f64::INFINITY;
        }
        self.sigma_scale * estimate.uncertainty
    }

    /// Inverse of [`calibrate`](Self::calibrate): standard deviation back to
    /// the reporting convention of the inputs.
    pub fn decalibrate(&self, sigma: f64) -> f64 {
        if sigma == f64::INFINITY {
            return f64::INFINITY;
        }
        sigma / self.sigma_scale
    }
}

impl Default for CalibrationPolicy {
    fn default() -> Self {
        Self { sigma_scale: 1.0 }
    }
}

/// Free-function form of [`CalibrationPolicy::calibrate`].
pub fn calibrate(estimate: &SourceEstimate, policy: &CalibrationPolicy) -> f64 {
    policy.calibrate(estimate)
}

/// A symmetric interval stored as midpoint and half-length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    midpoint: f64,
    #[serde(serialize_with = "numfmt::serialize_f64")]
    half_length: f64,
}

impl Interval {
    pub fn new(midpoint: f64, half_length: f64) -> Result<Self, EstimateError> {
        if !midpoint.is_finite() {
            return Err(EstimateError::NonFiniteValue(midpoint));
        }
        if !check_spread(half_length) {
            return Err(EstimateError::InvalidHalfLength(half_length));
        }
        Ok(Self {
            midpoint,
            half_length,
        })
    }

    /// Builds the interval `[lower, upper]`. Both bounds must be finite and ordered.
    pub fn from_bounds(lower: f64, upper: f64) -> Result<Self, EstimateError> {
        if !lower.is_finite() {
            return Err(EstimateError::NonFiniteValue(lower));
        }
        if !upper.is_finite() {
            return Err(EstimateError::NonFiniteValue(upper));
        }
        let half = (upper - lower) / 2.0;
        if !check_spread(half) {
            return Err(EstimateError::InvalidHalfLength(half));
        }
        Self::new(lower + half, half)
    }

    pub fn midpoint(&self) -> f64 {
        self.midpoint
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    pub fn lower(&self) -> f64 {
        self.midpoint - self.half_length
    }

    pub fn upper(&self) -> f64 {
        self.midpoint + self.half_length
    }

    /// True when `other` lies entirely within `self`.
    pub fn contains(&self, other: &Interval) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }
}

/// Reads an estimate as the interval `value ± calibrated uncertainty`.
pub fn to_interval(estimate: &SourceEstimate, policy: &CalibrationPolicy) -> Interval {
    Interval {
        midpoint: estimate.value,
        half_length: policy.calibrate(estimate),
    }
}

/// Reads an interval back as a value (midpoint) and uncertainty (half-length).
pub fn from_interval(interval: &Interval) -> SourceEstimate {
    SourceEstimate {
        value: interval.midpoint,
        uncertainty: interval.half_length,
        label: None,
    }
}

/// Which combination rule produced a resultant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    VirtualSampling,
    WeightedMean,
    UnweightedMean,
    #[serde(rename = "intersect")]
    Intersection,
    Cover,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::VirtualSampling,
        Method::WeightedMean,
        Method::UnweightedMean,
        Method::Intersection,
        Method::Cover,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::VirtualSampling => "virtual-sampling",
            Method::WeightedMean => "weighted-mean",
            Method::UnweightedMean => "unweighted-mean",
            Method::Intersection => "intersect",
            Method::Cover => "cover",
        }
    }

    pub fn is_interval_method(&self) -> bool {
        matches!(self, Method::Intersection | Method::Cover)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown method `{0}` (expected virtual-sampling, weighted-mean, unweighted-mean, intersect or cover)")]
pub struct UnknownMethod(pub String);

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "virtual-sampling" | "vs" => Ok(Method::VirtualSampling),
            "weighted-mean" => Ok(Method::WeightedMean),
            "unweighted-mean" => Ok(Method::UnweightedMean),
            "intersect" | "intersection" => Ok(Method::Intersection),
            "cover" => Ok(Method::Cover),
            other => Err(UnknownMethod(other.to_string())),
        }
    }
}

/// Resultant value and uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CombinedEstimate {
    pub value: f64,
    #[serde(serialize_with = "numfmt::serialize_f64")]
    pub uncertainty: f64,
    pub method: Method,
}
