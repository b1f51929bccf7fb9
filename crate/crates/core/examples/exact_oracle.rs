//! Runs virtual sampling in exact rational arithmetic next to the floating
//! version.

use estfuse::oracle::{exact_virtual_sampling, RationalEstimate};
use estfuse::{combine_virtual_sampling, CalibrationPolicy, SourceEstimate};
use num_traits::ToPrimitive;

fn main() {
    let pairs = [(0.0, 1.0), (1.0, 2.0), (0.75, 0.5), (-2.5, 4.0)];
    let rational: Vec<_> = pairs.iter().map(|&(m, s)| RationalEstimate::from_f64(m, s).unwrap()).collect();
    let exact = exact_virtual_sampling(&rational).unwrap();
    let floating: Vec<_> = pairs.iter().map(|&(m, s)| SourceEstimate::new(m, s).unwrap()).collect();
    let (r, d) = combine_virtual_sampling(&floating, &CalibrationPolicy::default()).unwrap();

    println!("m     exact {} = {:.17}", exact.m, exact.m.to_f64().unwrap());
    println!("      float {:.17}", r.value);
    println!("u_bar exact {}", exact.u_bar);
    println!("v     exact {} = {:.17}", exact.v, exact.v.to_f64().unwrap());
    println!("      float {:.17}", d.v);
}
