//! How the sigma scale maps stated uncertainty to a standard deviation, and
//! which methods it affects.

use estfuse::{combine, CalibrationPolicy, Method, SourceEstimate};

fn main() {
    let sources = [SourceEstimate::new(0.0, 1.0).unwrap(), SourceEstimate::new(1.0, 2.0).unwrap()];
    for scale in [0.5, 1.0, 2.0] {
        let policy = CalibrationPolicy::new(scale).unwrap();
        println!("sigma_scale {scale}: sd of first source = {}", policy.calibrate(&sources[0]));
        for method in Method::ALL {
            let r = combine(method, &sources, &policy).unwrap();
            println!("  {:<18} {:.6} +/- {:.6}", method.as_str(), r.value, r.uncertainty);
        }
    }
}
