//! Two sources: value 0 with standard deviation 1, value 1 with standard
//! deviation 2. Prints every intermediate quantity of virtual sampling.

use estfuse::{combine_virtual_sampling, CalibrationPolicy, SourceEstimate};

fn main() {
    let sources = [
        SourceEstimate::new(0.0, 1.0).unwrap().with_label("sharp"),
        SourceEstimate::new(1.0, 2.0).unwrap().with_label("vague"),
    ];
    let (resultant, d) = combine_virtual_sampling(&sources, &CalibrationPolicy::default()).unwrap();

    println!("v*   = {}", d.v_star);
    for (s, (n_i, u_i)) in sources.iter().zip(d.sample_sizes.iter().zip(&d.u_values)) {
        println!("{:<6} n_i = {n_i:<5} u_i = {u_i}", s.label().unwrap());
    }
    println!("n    = {}", d.n);
    println!("u_bar = {}", d.u_bar);
    println!("v    = {}", d.v);
    println!("resultant: {} +/- {}", resultant.value, resultant.uncertainty);
}
