//! Splits the adjusted variance into the common source variance and the
//! between-source disagreement as two sources drift apart.

use estfuse::{combine_virtual_sampling, decompose, CalibrationPolicy, SourceEstimate};

fn main() {
    println!("{:>6} {:>8} {:>10} {:>10} {:>10}", "gap", "v*", "between", "u_bar", "s");
    for gap in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let xs = [SourceEstimate::new(0.0, 1.0).unwrap(), SourceEstimate::new(gap, 1.0).unwrap()];
        let (r, d) = combine_virtual_sampling(&xs, &CalibrationPolicy::default()).unwrap();
        let (v_star, between) = decompose(&d);
        println!("{gap:>6} {v_star:>8.4} {between:>10.4} {:>10.4} {:>10.4}", d.u_bar, r.uncertainty);
    }
    // closer than 2 apart, two equally sure sources beat either one alone
}
