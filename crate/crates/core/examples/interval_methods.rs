//! Intersection and cover on the interval reading of estimates, including the
//! cases where each is undefined.

use estfuse::{combine_cover, combine_intersection, to_interval, CalibrationPolicy, SourceEstimate};

fn show(title: &str, sources: &[SourceEstimate]) {
    let policy = CalibrationPolicy::default();
    let intervals: Vec<_> = sources.iter().map(|s| to_interval(s, &policy)).collect();
    println!("{title}");
    for i in &intervals {
        println!("  source   [{}, {}]", i.lower(), i.upper());
    }
    match combine_intersection(&intervals) {
        Ok(i) => println!("  intersect [{}, {}]", i.lower(), i.upper()),
        Err(e) => println!("  intersect undefined: {}", e.reason()),
    }
    match combine_cover(&intervals) {
        Ok(i) => println!("  cover     [{}, {}]", i.lower(), i.upper()),
        Err(e) => println!("  cover     undefined: {}", e.reason()),
    }
}

fn main() {
    let est = |m, u| SourceEstimate::new(m, u).unwrap();
    show("overlapping", &[est(0.0, 1.0), est(1.0, 2.0)]);
    show("disjoint", &[est(0.0, 0.5), est(2.0, 0.5)]);
    show("one source knows nothing", &[est(0.0, 1.0), SourceEstimate::utterly_uncertain(3.0).unwrap()]);
}
