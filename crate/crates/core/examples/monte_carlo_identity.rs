//! Checks E[(x - c)^2] = variance + (mu - c)^2 by simulation.

use estfuse::oracle::{exact_expected_sq_distance, mc_expected_sq_distance, McConfig, SourceDistribution};

fn main() {
    let triples = [(0.0, 1.0, 0.0), (2.0, 0.5, -1.0), (-3.0, 4.0, 1.5)];
    for dist in [SourceDistribution::Normal, SourceDistribution::Uniform] {
        println!("{dist:?}");
        for (i, &(mu, var, c)) in triples.iter().enumerate() {
            let cfg = McConfig::new(200_000, i as u64, dist).unwrap();
            let mc = mc_expected_sq_distance(mu, var, c, &cfg).unwrap();
            let exact = exact_expected_sq_distance(mu, var, c);
            let z = (mc.estimate - exact) / mc.standard_error;
            println!(
                "  mu={mu:<5} var={var:<4} c={c:<5} exact={exact:<8} mc={:.5} (se {:.5}, z {z:+.2})",
                mc.estimate, mc.standard_error
            );
        }
    }
}
