//! As agreeing-in-distribution sources pile up, the level of individual
//! uncertainty matters less and less.

use estfuse::{combine_virtual_sampling, CalibrationPolicy, SourceEstimate};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let normal = Normal::new(0.0, 20.0).unwrap();
    let values: Vec<f64> = (0..160).map(|_| normal.sample(&mut rng)).collect();
    let policy = CalibrationPolicy::default();

    println!("{:>5} {:>10} {:>10} {:>10}", "K", "s(1)", "s(3)", "gap");
    for k in [5, 10, 20, 40, 80, 160] {
        let at = |level: f64| {
            let xs: Vec<_> = values[..k].iter().map(|&v| SourceEstimate::new(v, level).unwrap()).collect();
            combine_virtual_sampling(&xs, &policy).unwrap().0.uncertainty
        };
        let (a, b) = (at(1.0), at(3.0));
        println!("{k:>5} {a:>10.5} {b:>10.5} {:>10.5}", b - a);
    }
}
