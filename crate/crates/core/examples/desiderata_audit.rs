//! Audits every combination rule against all ten desiderata and prints a
//! verdict grid. Usage: `desiderata_audit [cases] [seed]`.

use estfuse::desiderata::run_audit;
use estfuse::{AuditConfig, DesideratumId, Method, Verdict};

fn main() {
    let mut args = std::env::args().skip(1);
    let cases = args.next().map_or(300, |s| s.parse().expect("cases"));
    let seed = args.next().map_or(42, |s| s.parse().expect("seed"));

    print!("{:<24}", "method");
    for id in DesideratumId::ALL {
        print!("{:>6}", id.to_string());
    }
    println!();
    for weak in [false, true] {
        let cfg = AuditConfig::new(seed, cases, 1e-9).unwrap().with_weak(weak);
        for method in Method::ALL {
            let label = format!("{}{}", method.as_str(), if weak { " (weak)" } else { "" });
            print!("{label:<24}");
            for r in run_audit(&DesideratumId::ALL, method, &cfg) {
                let cell = match r.verdict {
                    Verdict::Pass => "ok".to_string(),
                    Verdict::Fail => format!("x{}", r.violation_count),
                    Verdict::NotApplicable => "-".to_string(),
                };
                print!("{cell:>6}");
            }
            println!();
        }
    }
}
