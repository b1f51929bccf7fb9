use super::CombineError;
use crate::estimates::Interval;

/// Common part of all source intervals.
///
/// Lower bound is the greatest source lower bound, upper bound the least
/// source upper bound. When every source interval is unbounded the
/// intersection is the whole line and has no midpoint, which is reported as
/// [`CombineError::NoInformativeSources`].
pub fn combine_intersection(intervals: &[Interval]) -> Result<Interval, CombineError> {
    if intervals.is_empty() {
        return Err(CombineError::EmptyInput);
    }
    let lower = intervals
        .iter()
        .map(Interval::lower)
        .fold(f64::NEG_INFINITY, f64::max);
    let upper = intervals
        .iter()
        .map(Interval::upper)
        .fold(f64::INFINITY, f64::min);
    if lower > upper {
        return Err(CombineError::EmptyIntersection { lower, upper });
    }
    if !lower.is_finite() || !upper.is_finite() {
        return Err(CombineError::NoInformativeSources);
    }
    Ok(Interval::from_bounds(lower, upper).expect("ordered finite bounds"))
}

/// Smallest interval enclosing every source interval. Undefined when any
/// source interval is unbounded.
pub fn combine_cover(intervals: &[Interval]) -> Result<Interval, CombineError> {
    if intervals.is_empty() {
        return Err(CombineError::EmptyInput);
    }
    if intervals.iter().any(|i| i.half_length().is_infinite()) {
        return Err(CombineError::InfiniteCover);
    }
    let lower = intervals
        .iter()
        .map(Interval::lower)
        .fold(f64::INFINITY, f64::min);
    let upper = intervals
        .iter()
        .map(Interval::upper)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(Interval::from_bounds(lower, upper).expect("ordered finite bounds"))
}
