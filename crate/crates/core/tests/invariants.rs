use estfuse::{
    combine, combine_cover, combine_intersection, combine_virtual_sampling, combine_weighted_mean,
    decompose, to_interval, CalibrationPolicy, Interval, Method, SourceEstimate,
};
use proptest::prelude::*;

fn source() -> impl Strategy<Value = SourceEstimate> {
    (-100.0..100.0f64, -4.0..4.0f64, 0..10u8).prop_map(|(value, log_sd, utter)| {
        if utter == 0 {
            SourceEstimate::utterly_uncertain(value).unwrap()
        } else {
            SourceEstimate::new(value, 2f64.powf(log_sd)).unwrap()
        }
    })
}

fn sources() -> impl Strategy<Value = Vec<SourceEstimate>> {
    prop::collection::vec(source(), 1..8)
}

fn informative(xs: &[SourceEstimate]) -> Vec<&SourceEstimate> {
    xs.iter().filter(|e| !e.is_utterly_uncertain()).collect()
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(scale)
}

fn value_scale(xs: &[SourceEstimate]) -> f64 {
    xs.iter().map(|e| e.value().abs()).fold(1.0, f64::max)
}

proptest! {
    #[test]
    fn value_within_informative_range(xs in sources()) {
        let p = CalibrationPolicy::default();
        let inf = informative(&xs);
        prop_assume!(!inf.is_empty());
        let (r, _) = combine_virtual_sampling(&xs, &p).unwrap();
        let lo = inf.iter().map(|e| e.value()).fold(f64::INFINITY, f64::min);
        let hi = inf.iter().map(|e| e.value()).fold(f64::NEG_INFINITY, f64::max);
        let slack = 1e-12 * value_scale(&xs);
        prop_assert!(lo - slack <= r.value && r.value <= hi + slack);
    }

    #[test]
    fn value_is_the_inverse_variance_mean(xs in sources()) {
        let inf = informative(&xs);
        prop_assume!(!inf.is_empty());
        let (num, den) = inf.iter().fold((0.0, 0.0), |(n, d), e| {
            let w = 1.0 / (e.uncertainty() * e.uncertainty());
            (n + w * e.value(), d + w)
        });
        let (r, _) = combine_virtual_sampling(&xs, &CalibrationPolicy::default()).unwrap();
        prop_assert!(close(r.value, num / den, value_scale(&xs)));
    }

    #[test]
    fn no_tighter_than_weighted_mean(xs in sources()) {
        prop_assume!(!informative(&xs).is_empty());
        let p = CalibrationPolicy::default();
        let (vs, _) = combine_virtual_sampling(&xs, &p).unwrap();
        let wm = combine_weighted_mean(&xs, &p).unwrap();
        prop_assert!(vs.uncertainty >= wm.uncertainty * (1.0 - 1e-12));
    }

    #[test]
    fn diagnostics_are_consistent(xs in sources()) {
        prop_assume!(!informative(&xs).is_empty());
        let (r, d) = combine_virtual_sampling(&xs, &CalibrationPolicy::default()).unwrap();
        prop_assert!(d.sample_sizes.iter().all(|&n| (0.0..=1.0).contains(&n)));
        prop_assert_eq!(d.sample_sizes.iter().cloned().fold(0.0, f64::max), 1.0);
        prop_assert!(close(d.sample_sizes.iter().sum::<f64>(), d.n, 1.0));
        let (v_star, between) = decompose(&d);
        prop_assert!(close(d.u_bar, v_star + between, 0.0));
        prop_assert!(close(d.v, d.u_bar / d.n, 0.0));
        prop_assert!(d.v <= d.u_bar);
        prop_assert!(close(r.uncertainty, d.v.sqrt(), 0.0));
    }

    #[test]
    fn permutation_invariance(xs in sources(), shift in 0usize..8) {
        let p = CalibrationPolicy::default();
        let mut rotated = xs.clone();
        rotated.rotate_left(shift % xs.len());
        rotated.reverse();
        let scale = value_scale(&xs);
        for method in Method::ALL {
            match (combine(method, &xs, &p), combine(method, &rotated, &p)) {
                (Ok(a), Ok(b)) => {
                    prop_assert!(close(a.value, b.value, scale), "{method}");
                    prop_assert!(a.uncertainty == b.uncertainty || close(a.uncertainty, b.uncertainty, 0.0));
                }
                (Err(a), Err(b)) => prop_assert_eq!(a.reason(), b.reason()),
                (a, b) => prop_assert!(false, "{method}: {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn translation_and_scaling(xs in sources(), shift in -50.0..50.0f64, log_k in -3.0..3.0f64) {
        let p = CalibrationPolicy::default();
        let k = 2f64.powf(log_k);
        let moved: Vec<_> = xs
            .iter()
            .map(|e| SourceEstimate::new(k * e.value() + shift, k * e.uncertainty()).unwrap())
            .collect();
        let scale = k * value_scale(&xs) + shift.abs();
        for method in Method::ALL {
            match (combine(method, &xs, &p), combine(method, &moved, &p)) {
                (Ok(a), Ok(b)) => {
                    prop_assert!(close(b.value, k * a.value + shift, scale), "{method}");
                    let want = k * a.uncertainty;
                    prop_assert!(b.uncertainty == want || close(b.uncertainty, want, 0.0), "{method}");
                }
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "{method}: {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn interval_containment(xs in sources(), sigma_scale in 0.25..4.0f64) {
        let p = CalibrationPolicy::new(sigma_scale).unwrap();
        let ivs: Vec<_> = xs.iter().map(|e| to_interval(e, &p)).collect();
        // bounds are rebuilt from midpoint and half-length, so allow a few ulps
        let within = |outer: &Interval, inner: &Interval| {
            let slack = 4.0 * f64::EPSILON * outer.lower().abs().max(outer.upper().abs());
            outer.lower() - slack <= inner.lower() && inner.upper() <= outer.upper() + slack
        };
        if let Ok(inter) = combine_intersection(&ivs) {
            prop_assert!(ivs.iter().all(|s| within(s, &inter)));
        }
        if let Ok(cover) = combine_cover(&ivs) {
            prop_assert!(ivs.iter().all(|s| within(&cover, s)));
        }
    }

    #[test]
    fn disagreeing_pair_can_beat_both_sources(m1 in -10.0..10.0f64, s1 in 0.1..10.0f64, s2 in 0.1..10.0f64, up in any::<bool>()) {
        // any offset below (1 + r) * min(s1, s2) works; half of min(s1, s2) always does
        let delta = 0.5 * s1.min(s2);
        let m2 = if up { m1 + delta } else { m1 - delta };
        prop_assume!(m2 != m1);
        let xs = [SourceEstimate::new(m1, s1).unwrap(), SourceEstimate::new(m2, s2).unwrap()];
        let (r, _) = combine_virtual_sampling(&xs, &CalibrationPolicy::default()).unwrap();
        prop_assert!(r.uncertainty < s1.min(s2));
    }
}

#[test]
fn near_agreeing_equal_pair_witness() {
    let xs = [SourceEstimate::new(0.0, 1.0).unwrap(), SourceEstimate::new(0.5, 1.0).unwrap()];
    let (r, _) = combine_virtual_sampling(&xs, &CalibrationPolicy::default()).unwrap();
    // v = (1 + 0.0625) / 2
    assert!((r.uncertainty - (1.0625f64 / 2.0).sqrt()).abs() < 1e-15);
    assert!(r.uncertainty < 1.0);
}
