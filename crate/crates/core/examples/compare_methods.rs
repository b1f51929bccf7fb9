//! Runs all five combination rules on the same input.
//!
//! Pass a CSV path (`value,uncertainty[,label]`) or nothing for a built-in set.

use estfuse::cli::{parse_estimates, InputFormat};
use estfuse::{combine, CalibrationPolicy, Method, SourceEstimate};

fn main() {
    let sources: Vec<SourceEstimate> = match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).expect("readable input");
            parse_estimates(&text, InputFormat::Auto).expect("valid input")
        }
        None => vec![
            SourceEstimate::new(0.0, 1.0).unwrap(),
            SourceEstimate::new(1.0, 2.0).unwrap(),
            SourceEstimate::new(0.6, 0.8).unwrap(),
            SourceEstimate::utterly_uncertain(40.0).unwrap(),
        ],
    };
    let policy = CalibrationPolicy::default();
    println!("{:<18} {:>12} {:>12}", "method", "value", "uncertainty");
    for method in Method::ALL {
        match combine(method, &sources, &policy) {
            Ok(r) => println!("{:<18} {:>12.6} {:>12.6}", method.as_str(), r.value, r.uncertainty),
            Err(e) => println!("{:<18} undefined ({})", method.as_str(), e.reason()),
        }
    }
}
