//! Combine uncertain estimates from several sources into one value and
//! uncertainty.
//!
//! The core rule is *virtual sampling*: every source is read as a distribution
//! of sample means, more certain sources standing for larger samples. The
//! resultant uncertainty grows with the sources' own uncertainty and with their
//! disagreement, and shrinks as agreeing sources accumulate.
//!
//! ```
//! use estfuse::{combine_virtual_sampling, CalibrationPolicy, SourceEstimate};
//!
//! let sources = [
//!     SourceEstimate::new(0.0, 1.0).unwrap(),
//!     SourceEstimate::new(1.0, 2.0).unwrap(),
//! ];
//! let (resultant, diag) =
//!     combine_virtual_sampling(&sources, &CalibrationPolicy::default()).unwrap();
//! assert!((resultant.value - 0.2).abs() < 1e-12);
//! assert!((diag.v - 0.928).abs() < 1e-12);
//! ```
//!
//! Four rival rules ([`combine_weighted_mean`], [`combine_unweighted_mean`],
//! [`combine_intersection`], [`combine_cover`]) are provided for comparison,
//! and [`desiderata`] turns ten intuitive requirements on a combination rule
//! into randomized, seeded audits.

pub mod cli;
pub mod combinators;
pub mod desiderata;
pub mod estimates;
pub mod numfmt;
pub mod oracle;

pub use combinators::{
    combine, combine_cover, combine_intersection, combine_unweighted_mean,
    combine_virtual_sampling, combine_weighted_mean, decompose, CombineError,
    VirtualSamplingDiagnostics,
};
pub use desiderata::{run_desideratum, AuditConfig, DesideratumId, DesideratumReport, Verdict};
pub use estimates::{
    calibrate, from_interval, to_interval, CalibrationPolicy, CombinedEstimate, EstimateError,
    Interval, Method, SourceEstimate,
};
