//! Randomized scenarios, one family per desideratum.
//!
//! Every generator builds inputs that satisfy the desideratum's precondition by
//! construction. Values are centered in `[-5, 5]`, finite uncertainties are
//! log-uniform in `[0.25, 4]`. About half of the scenarios are "tight" (every
//! source interval contains a common point) so that interval intersection is
//! defined often enough to be exercised.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::{AuditConfig, DesideratumId};
use crate::combinators::combine_virtual_sampling;
use crate::estimates::{CalibrationPolicy, SourceEstimate};

const CENTER_RANGE: f64 = 5.0;
const UNC_MIN: f64 = 0.25;
const UNC_MAX: f64 = 4.0;
const WIDE_SPREAD_MAX: f64 = 5.0;
const UTTER_PROB: f64 = 0.2;

/// Finite uncertainties that stand in for `+inf` in the limit form of D5.
pub const IGNORANCE_LADDER: [f64; 3] = [1e2, 1e4, 1e6];
/// Perturbation sizes for the continuity check, largest first.
pub const CONTINUITY_LADDER: [f64; 7] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8];
/// Source counts at which D10 compares uncertainty levels.
pub const SUFFICIENCY_SIZES: [usize; 5] = [5, 10, 20, 40, 80];
/// Size of the fixed value population D10 draws from.
pub const SUFFICIENCY_POPULATION: usize = 200;

const POPULATION_SALT: u64 = 0x5eed_d10d_0000_0001;

/// A base input, a perturbed input, and whatever else the check needs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub id: DesideratumId,
    pub base: Vec<SourceEstimate>,
    pub perturbed: Vec<SourceEstimate>,
    #[serde(skip)]
    pub detail: ScenarioDetail,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub enum ScenarioDetail {
    /// Nothing beyond base and perturbed.
    #[default]
    Plain,
    /// D2: the value at `index` was increased.
    ValueIncreased { index: usize },
    /// D4: the uncertainty at `index` was decreased.
    Sharpened { index: usize },
    /// D5: `perturbed` appends an utterly uncertain source; each rung appends
    /// the same value with a large finite uncertainty instead.
    Ignorance { limit_ladder: Vec<Vec<SourceEstimate>> },
    /// D6: `(epsilon, input)` pairs moving one coordinate by epsilon.
    Continuity { ladder: Vec<(f64, Vec<SourceEstimate>)> },
    /// D10: `base` and `perturbed` hold the same drawn values at two uncertainty
    /// levels; checks use the leading `sizes[k]` sources.
    Sufficiency { sizes: Vec<usize>, levels: (f64, f64) },
}

/// Deterministic RNG for one audit case.
pub fn case_rng(seed: u64, id: DesideratumId, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (id.number() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.set_stream(case as u64);
    rng
}

/// The fixed population D10 draws values from. Depends only on `seed`.
pub fn sufficiency_population(seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ POPULATION_SALT);
    (0..SUFFICIENCY_POPULATION)
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect()
}

/// Builds scenarios for an audit configuration.
#[derive(Debug, Clone)]
pub struct ScenarioGenerator {
    min_sources: usize,
    max_sources: usize,
    population: Vec<f64>,
}

impl ScenarioGenerator {
    pub fn new(cfg: &AuditConfig) -> Self {
        let (min_sources, max_sources) = cfg.source_counts();
        Self {
            min_sources,
            max_sources,
            population: sufficiency_population(cfg.seed),
        }
    }

    pub fn generate<R: Rng>(&self, id: DesideratumId, rng: &mut R) -> Scenario {
        use DesideratumId::*;
        match id {
            D1 => {
                let k = self.count(rng, 1);
                let base = random_sources(rng, k, true);
                plain(id, base.clone(), base)
            }
            D2 => self.monotonicity(rng),
            D3 => symmetry(rng),
            D4 => self.certainty(rng),
            D5 => self.ignorance(rng),
            D6 => self.continuity(rng),
            D7 => composition(rng),
            D8 => self.support(rng),
            D9 => resolution(rng),
            D10 => self.sufficiency(rng),
        }
    }

    fn count<R: Rng>(&self, rng: &mut R, at_least: usize) -> usize {
        let lo = self.min_sources.max(at_least);
        let hi = self.max_sources.max(lo);
        rng.random_range(lo..=hi)
    }

    fn monotonicity<R: Rng>(&self, rng: &mut R) -> Scenario {
        let k = self.count(rng, 1);
        let base = random_sources(rng, k, true);
        let finite: Vec<usize> = (0..k).filter(|&i| !base[i].is_utterly_uncertain()).collect();
        let index = *finite.choose(rng).expect("at least one finite source");
        let mut perturbed = base.clone();
        let delta = rng.random_range(0.05..2.0);
        perturbed[index] = with_value(&base[index], base[index].value() + delta);
        Scenario {
            id: DesideratumId::D2,
            base,
            perturbed,
            detail: ScenarioDetail::ValueIncreased { index },
        }
    }

    fn certainty<R: Rng>(&self, rng: &mut R) -> Scenario {
        let k = self.count(rng, 2);
        let base = random_sources(rng, k, false);
        let index = rng.random_range(0..k);
        let factor = rng.random_range(0.3..0.9);
        let mut perturbed = base.clone();
        perturbed[index] = with_uncertainty(&base[index], base[index].uncertainty() * factor);
        Scenario {
            id: DesideratumId::D4,
            base,
            perturbed,
            detail: ScenarioDetail::Sharpened { index },
        }
    }

    fn ignorance<R: Rng>(&self, rng: &mut R) -> Scenario {
        let k = self.count(rng, 1);
        let base = random_sources(rng, k, false);
        let (lo, hi) = value_range(&base);
        let added = rng.random_range(lo - 2.0..hi + 2.0);
        let mut perturbed = base.clone();
        perturbed.push(src(added, f64::INFINITY));
        let limit_ladder = IGNORANCE_LADDER
            .iter()
            .map(|&u| {
                let mut xs = base.clone();
                xs.push(src(added, u));
                xs
            })
            .collect();
        Scenario {
            id: DesideratumId::D5,
            base,
            perturbed,
            detail: ScenarioDetail::Ignorance { limit_ladder },
        }
    }

    fn continuity<R: Rng>(&self, rng: &mut R) -> Scenario {
        let k = self.count(rng, 1);
        let base = random_sources(rng, k, true);
        let index = rng.random_range(0..k);
        let move_value = base[index].is_utterly_uncertain() || rng.random_bool(0.5);
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let ladder: Vec<(f64, Vec<SourceEstimate>)> = CONTINUITY_LADDER
            .iter()
            .map(|&eps| {
                let mut xs = base.clone();
                xs[index] = if move_value {
                    with_value(&base[index], base[index].value() + sign * eps)
                } else {
                    // uncertainties only move upward so they stay positive
                    with_uncertainty(&base[index], base[index].uncertainty() + eps)
                };
                (eps, xs)
            })
            .collect();
        Scenario {
            id: DesideratumId::D6,
            base,
            perturbed: ladder[0].1.clone(),
            detail: ScenarioDetail::Continuity { ladder },
        }
    }

    fn support<R: Rng>(&self, rng: &mut R) -> Scenario {
        let k = self.count(rng, 1);
        let c = center(rng);
        let base: Vec<SourceEstimate> = (0..k).map(|_| src(c, log_uniform(rng))).collect();
        let mut perturbed = base.clone();
        perturbed.push(src(c, log_uniform(rng)));
        plain(DesideratumId::D8, base, perturbed)
    }

    fn sufficiency<R: Rng>(&self, rng: &mut R) -> Scenario {
        let k_max = *SUFFICIENCY_SIZES.last().expect("non-empty ladder");
        let drawn = draw_without_replacement(&self.population, k_max, rng);
        let a = log_uniform(rng);
        let b = a * rng.random_range(1.5..4.0);
        let (a, b) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
        let at = |level: f64| drawn.iter().map(|&m| src(m, level)).collect::<Vec<_>>();
        Scenario {
            id: DesideratumId::D10,
            base: at(a),
            perturbed: at(b),
            detail: ScenarioDetail::Sufficiency {
                sizes: SUFFICIENCY_SIZES.to_vec(),
                levels: (a, b),
            },
        }
    }
}

/// Free-function form of [`ScenarioGenerator::generate`].
pub fn generate_scenario<R: Rng>(id: DesideratumId, rng: &mut R, cfg: &AuditConfig) -> Scenario {
    ScenarioGenerator::new(cfg).generate(id, rng)
}

/// First `k` elements of a uniformly random permutation of `population`.
pub fn draw_without_replacement<R: Rng>(population: &[f64], k: usize, rng: &mut R) -> Vec<f64> {
    let mut pool = population.to_vec();
    let k = k.min(pool.len());
    for i in 0..k {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}

fn symmetry<R: Rng>(rng: &mut R) -> Scenario {
    let c = center(rng);
    let s = log_uniform(rng);
    let spread = spread_for(rng, s);
    let base = vec![
        src(c + rng.random_range(-spread..=spread), s),
        src(c + rng.random_range(-spread..=spread), s),
    ];
    plain(DesideratumId::D3, base.clone(), base)
}

/// Symmetric configuration around `c`: either a changed pair at `c ± d` or a
/// single changed source at `c`, plus unchanged symmetric pairs strictly
/// farther out. Changed uncertainties grow by a common factor.
fn composition<R: Rng>(rng: &mut R) -> Scenario {
    let c = center(rng);
    let tight = rng.random_bool(0.5);
    let single = rng.random_bool(0.25);

    let mut base = Vec::new();
    let mut changed = Vec::new();
    let s_inner = log_uniform(rng);
    let d = if single {
        changed.push(base.len());
        base.push(src(c, s_inner));
        0.0
    } else {
        let d = if tight {
            rng.random_range(0.1..0.9) * s_inner
        } else {
            rng.random_range(0.1..3.0)
        };
        changed.extend([base.len(), base.len() + 1]);
        base.push(src(c - d, s_inner));
        base.push(src(c + d, s_inner));
        d
    };

    let outer = if single { rng.random_range(1..=2) } else { rng.random_range(0..=2) };
    for _ in 0..outer {
        let e = d + rng.random_range(0.1..2.0);
        let s = if tight {
            e / 0.9 * rng.random_range(1.0..2.0)
        } else {
            log_uniform(rng)
        };
        base.push(src(c - e, s));
        base.push(src(c + e, s));
    }

    let factor = rng.random_range(1.2..3.0);
    let mut perturbed = base.clone();
    for &i in &changed {
        perturbed[i] = with_uncertainty(&base[i], base[i].uncertainty() * factor);
    }
    let scenario = shuffled(DesideratumId::D7, base, perturbed, rng);
    debug_assert_value_preserved(&scenario);
    scenario
}

/// Symmetric pair at `c ± d` contracted to `c ± d'`, amid other symmetric
/// pairs and possibly a central source.
fn resolution<R: Rng>(rng: &mut R) -> Scenario {
    let c = center(rng);
    let tight = rng.random_bool(0.5);
    let s_pair = log_uniform(rng);
    let d = if tight {
        rng.random_range(0.2..0.9) * s_pair
    } else {
        rng.random_range(0.5..3.0)
    };
    let d_new = d * rng.random_range(0.1..0.8);

    let mut base = vec![src(c - d, s_pair), src(c + d, s_pair)];
    let mut perturbed = vec![src(c - d_new, s_pair), src(c + d_new, s_pair)];
    let mut others = Vec::new();
    if rng.random_bool(0.3) {
        others.push(src(c, log_uniform(rng)));
    }
    for _ in 0..rng.random_range(0..=2) {
        let s = log_uniform(rng);
        let e = if tight {
            rng.random_range(0.0..0.9) * s
        } else {
            rng.random_range(0.0..4.0)
        };
        others.push(src(c - e, s));
        others.push(src(c + e, s));
    }
    base.extend(others.iter().cloned());
    perturbed.extend(others);
    let scenario = shuffled(DesideratumId::D9, base, perturbed, rng);
    debug_assert_value_preserved(&scenario);
    scenario
}

fn debug_assert_value_preserved(s: &Scenario) {
    if cfg!(debug_assertions) {
        let p = CalibrationPolicy::default();
        let (a, _) = combine_virtual_sampling(&s.base, &p).expect("finite sources");
        let (b, _) = combine_virtual_sampling(&s.perturbed, &p).expect("finite sources");
        let scale = a.value.abs().max(1.0);
        assert!(
            (a.value - b.value).abs() <= 1e-12 * scale,
            "generator moved the resultant value: {} -> {}",
            a.value,
            b.value
        );
    }
}

fn shuffled<R: Rng>(
    id: DesideratumId,
    base: Vec<SourceEstimate>,
    perturbed: Vec<SourceEstimate>,
    rng: &mut R,
) -> Scenario {
    let mut order: Vec<usize> = (0..base.len()).collect();
    order.shuffle(rng);
    let pick = |xs: &[SourceEstimate]| order.iter().map(|&i| xs[i].clone()).collect();
    plain(id, pick(&base), pick(&perturbed))
}

fn plain(id: DesideratumId, base: Vec<SourceEstimate>, perturbed: Vec<SourceEstimate>) -> Scenario {
    Scenario {
        id,
        base,
        perturbed,
        detail: ScenarioDetail::Plain,
    }
}

/// `k` sources around a random center. Tight scenarios keep every value
/// within 0.9 of its own uncertainty from the center.
fn random_sources<R: Rng>(rng: &mut R, k: usize, allow_utter: bool) -> Vec<SourceEstimate> {
    let c = center(rng);
    let tight = rng.random_bool(0.5);
    let wide = rng.random_range(0.5..WIDE_SPREAD_MAX);
    let mut out: Vec<SourceEstimate> = (0..k)
        .map(|_| {
            let s = log_uniform(rng);
            let spread = if tight { 0.9 * s } else { wide };
            src(c + rng.random_range(-spread..=spread), s)
        })
        .collect();
    if allow_utter && k >= 2 && rng.random_bool(UTTER_PROB) {
        let i = rng.random_range(0..k);
        out[i] = with_uncertainty(&out[i], f64::INFINITY);
    }
    out
}

fn spread_for<R: Rng>(rng: &mut R, s: f64) -> f64 {
    if rng.random_bool(0.5) {
        0.9 * s
    } else {
        rng.random_range(0.5..WIDE_SPREAD_MAX)
    }
}

fn center<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(-CENTER_RANGE..=CENTER_RANGE)
}

fn log_uniform<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(UNC_MIN.ln()..=UNC_MAX.ln()).exp()
}

fn value_range(xs: &[SourceEstimate]) -> (f64, f64) {
    xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| {
        (lo.min(e.value()), hi.max(e.value()))
    })
}

fn src(value: f64, uncertainty: f64) -> SourceEstimate {
    SourceEstimate::new(value, uncertainty).expect("generator emits valid estimates")
}

pub(super) fn with_value(e: &SourceEstimate, value: f64) -> SourceEstimate {
    src(value, e.uncertainty())
}

pub(super) fn with_uncertainty(e: &SourceEstimate, uncertainty: f64) -> SourceEstimate {
    src(e.value(), uncertainty)
}
