use serde::Serialize;

use super::scenario::{Scenario, ScenarioDetail};
use super::{AuditConfig, DesideratumId};
use crate::combinators::combine;
use crate::estimates::{CalibrationPolicy, CombinedEstimate, Method, SourceEstimate};
use crate::numfmt;

/// One resultant observed while checking a case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observation {
    pub input: String,
    pub value: f64,
    #[serde(serialize_with = "numfmt::serialize_f64")]
    pub uncertainty: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CaseOutcome {
    /// The method has no resultant for some input, or the precondition does
    /// not hold for this method's resultant.
    NotApplicable,
    Satisfied,
    Violated {
        observed: Vec<Observation>,
        inequality: String,
    },
}

impl CaseOutcome {
    pub fn is_violation(&self) -> bool {
        matches!(self, CaseOutcome::Violated { .. })
    }
}

fn eval(method: Method, xs: &[SourceEstimate]) -> Option<CombinedEstimate> {
    combine(method, xs, &CalibrationPolicy::default()).ok()
}

fn obs(input: impl Into<String>, c: &CombinedEstimate) -> Observation {
    Observation {
        input: input.into(),
        value: c.value,
        uncertainty: c.uncertainty,
    }
}

/// Magnitude of the scenario's numbers; margins are `tolerance * scale`.
fn scale(xs: &[SourceEstimate]) -> f64 {
    xs.iter().fold(1.0f64, |acc, e| {
        let u = if e.uncertainty().is_finite() { e.uncertainty() } else { 0.0 };
        acc.max(e.value().abs()).max(u)
    })
}

fn violated(observed: Vec<Observation>, inequality: String) -> CaseOutcome {
    CaseOutcome::Violated {
        observed,
        inequality,
    }
}

fn verdict(ok: bool, observed: Vec<Observation>, inequality: impl FnOnce() -> String) -> CaseOutcome {
    if ok {
        CaseOutcome::Satisfied
    } else {
        violated(observed, inequality())
    }
}

fn effect(a: &CombinedEstimate, b: &CombinedEstimate) -> f64 {
    (a.value - b.value).abs().max((a.uncertainty - b.uncertainty).abs())
}

/// Checks one scenario against one method.
pub fn check(scenario: &Scenario, method: Method, cfg: &AuditConfig) -> CaseOutcome {
    use DesideratumId::*;

    let weak = cfg.weak && scenario.id.has_weak_form();
    let margin = cfg.tolerance() * scale(&scenario.base);
    let Some(b) = eval(method, &scenario.base) else {
        return CaseOutcome::NotApplicable;
    };

    match (&scenario.id, &scenario.detail) {
        (D1, _) => {
            let (lo, hi) = scenario
                .base
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| {
                    (lo.min(e.value()), hi.max(e.value()))
                });
            verdict(
                lo - margin <= b.value && b.value <= hi + margin,
                vec![obs("base", &b)],
                || format!("{lo} <= resultant value {} <= {hi}", b.value),
            )
        }
        (D2, _) => {
            let Some(p) = eval(method, &scenario.perturbed) else {
                return CaseOutcome::NotApplicable;
            };
            let ok = if weak {
                p.value >= b.value - margin
            } else {
                p.value > b.value + margin
            };
            verdict(ok, vec![obs("base", &b), obs("perturbed", &p)], || {
                let rel = if weak { ">=" } else { ">" };
                format!("resultant value {} {rel} {}", p.value, b.value)
            })
        }
        (D3, _) => {
            let mid = (scenario.base[0].value() + scenario.base[1].value()) / 2.0;
            verdict(
                (b.value - mid).abs() <= margin,
                vec![obs("base", &b)],
                || format!("resultant value {} == midpoint {mid}", b.value),
            )
        }
        (D4, ScenarioDetail::Sharpened { index }) => {
            let Some(p) = eval(method, &scenario.perturbed) else {
                return CaseOutcome::NotApplicable;
            };
            let target = scenario.base[*index].value();
            let before = (b.value - target).abs();
            if before <= margin {
                return CaseOutcome::NotApplicable;
            }
            let after = (p.value - target).abs();
            let ok = if weak {
                after <= before + margin
            } else {
                after < before - margin
            };
            verdict(ok, vec![obs("base", &b), obs("perturbed", &p)], || {
                let rel = if weak { "<=" } else { "<" };
                format!("distance to sharpened source {after} {rel} {before}")
            })
        }
        (D5, ScenarioDetail::Ignorance { limit_ladder }) => {
            let mut observed = vec![obs("base", &b)];
            let mut applicable = false;
            let mut failures = Vec::new();

            if let Some(p) = eval(method, &scenario.perturbed) {
                applicable = true;
                observed.push(obs("with utterly uncertain source", &p));
                if effect(&b, &p) > margin {
                    failures.push(format!(
                        "utterly uncertain source changed the resultant by {}",
                        effect(&b, &p)
                    ));
                }
            }

            let rungs: Option<Vec<CombinedEstimate>> =
                limit_ladder.iter().map(|xs| eval(method, xs)).collect();
            if let Some(rungs) = rungs {
                applicable = true;
                let effects: Vec<f64> = rungs.iter().map(|r| effect(&b, r)).collect();
                for (r, xs) in rungs.iter().zip(limit_ladder) {
                    let u = xs.last().map_or(f64::NAN, SourceEstimate::uncertainty);
                    observed.push(obs(format!("with added uncertainty {u:e}"), r));
                }
                let shrinking = effects.windows(2).all(|w| w[1] <= w[0] + margin);
                let last = *effects.last().expect("non-empty ladder");
                if !shrinking || last > margin {
                    failures.push(format!(
                        "effect of added source should shrink below {margin:e}, got {effects:?}"
                    ));
                }
            }

            if !applicable {
                CaseOutcome::NotApplicable
            } else if failures.is_empty() {
                CaseOutcome::Satisfied
            } else {
                violated(observed, failures.join("; "))
            }
        }
        (D6, ScenarioDetail::Continuity { ladder }) => {
            let outs: Option<Vec<CombinedEstimate>> =
                ladder.iter().map(|(_, xs)| eval(method, xs)).collect();
            let Some(outs) = outs else {
                return CaseOutcome::NotApplicable;
            };
            let changes: Vec<f64> = outs.iter().map(|o| effect(&b, o)).collect();
            let (eps_first, eps_last) = (ladder[0].0, ladder[ladder.len() - 1].0);
            // at least Hölder-1/2 decay; a jump keeps the change roughly constant
            let bound = changes[0] * (eps_last / eps_first).sqrt() + margin;
            let last = changes[changes.len() - 1];
            let mut observed = vec![obs("base", &b)];
            observed.extend(
                ladder
                    .iter()
                    .zip(&outs)
                    .map(|((eps, _), o)| obs(format!("epsilon {eps:e}"), o)),
            );
            verdict(last <= bound, observed, || {
                format!("change at smallest epsilon {last} <= {bound} (changes {changes:?})")
            })
        }
        (D7, _) | (D9, _) => {
            let Some(p) = eval(method, &scenario.perturbed) else {
                return CaseOutcome::NotApplicable;
            };
            if (p.value - b.value).abs() > margin {
                return CaseOutcome::NotApplicable;
            }
            let increases = scenario.id == D7;
            let ok = match (increases, weak) {
                (true, false) => p.uncertainty > b.uncertainty + margin,
                (true, true) => p.uncertainty >= b.uncertainty - margin,
                (false, false) => p.uncertainty < b.uncertainty - margin,
                (false, true) => p.uncertainty <= b.uncertainty + margin,
            };
            verdict(ok, vec![obs("base", &b), obs("perturbed", &p)], || {
                let rel = match (increases, weak) {
                    (true, false) => ">",
                    (true, true) => ">=",
                    (false, false) => "<",
                    (false, true) => "<=",
                };
                format!("resultant uncertainty {} {rel} {}", p.uncertainty, b.uncertainty)
            })
        }
        (D8, _) => {
            let Some(p) = eval(method, &scenario.perturbed) else {
                return CaseOutcome::NotApplicable;
            };
            let observed = vec![obs("base", &b), obs("perturbed", &p)];
            if b.uncertainty <= margin {
                // already as low as possible: must stay there
                return verdict(p.uncertainty <= margin, observed, || {
                    format!("resultant uncertainty {} stays at 0", p.uncertainty)
                });
            }
            let ok = if weak {
                p.uncertainty <= b.uncertainty + margin
            } else {
                p.uncertainty < b.uncertainty - margin
            };
            verdict(ok, observed, || {
                let rel = if weak { "<=" } else { "<" };
                format!("resultant uncertainty {} {rel} {}", p.uncertainty, b.uncertainty)
            })
        }
        (D10, ScenarioDetail::Sufficiency { sizes, levels }) => {
            let mut observed = Vec::new();
            let mut gaps = Vec::with_capacity(sizes.len());
            for &k in sizes {
                let (Some(sa), Some(sb)) = (
                    eval(method, &scenario.base[..k]),
                    eval(method, &scenario.perturbed[..k]),
                ) else {
                    return CaseOutcome::NotApplicable;
                };
                observed.push(obs(format!("K={k} at level {}", levels.0), &sa));
                observed.push(obs(format!("K={k} at level {}", levels.1), &sb));
                gaps.push((sa.uncertainty - sb.uncertainty).abs());
            }
            let decreasing = gaps.windows(2).all(|w| {
                if weak {
                    w[1] <= w[0] + margin
                } else {
                    w[1] < w[0] - margin
                }
            });
            let k_last = *sizes.last().expect("non-empty ladder") as f64;
            let rate_bound = (levels.0 - levels.1).abs() / k_last.sqrt() + margin;
            let last = *gaps.last().expect("non-empty ladder");
            verdict(decreasing && last <= rate_bound, observed, || {
                format!(
                    "gap between uncertainty levels must decrease and end <= {rate_bound}, got {gaps:?}"
                )
            })
        }
        (id, detail) => unreachable!("scenario detail {detail:?} does not belong to {id:?}"),
    }
}

/// One round of shrinking: move the perturbation halfway back toward the base,
/// first jointly, then one coordinate at a time, keeping each step that still
/// violates.
pub fn shrink(scenario: &Scenario, method: Method, cfg: &AuditConfig) -> Scenario {
    let shrinkable = matches!(
        scenario.id,
        DesideratumId::D2 | DesideratumId::D4 | DesideratumId::D7 | DesideratumId::D9
    );
    if !shrinkable || scenario.base.len() != scenario.perturbed.len() {
        return scenario.clone();
    }

    let differing: Vec<usize> = (0..scenario.base.len())
        .filter(|&i| scenario.base[i] != scenario.perturbed[i])
        .collect();
    let mut current = scenario.clone();

    let try_step = |current: &mut Scenario, coords: &[usize]| {
        let mut candidate = current.clone();
        for &i in coords {
            let (b, p) = (&current.base[i], &current.perturbed[i]);
            let v = (b.value() + p.value()) / 2.0;
            let u = (b.uncertainty() + p.uncertainty()) / 2.0;
            candidate.perturbed[i] = SourceEstimate::new(v, u).expect("between valid estimates");
        }
        if check(&candidate, method, cfg).is_violation() {
            *current = candidate;
        }
    };

    try_step(&mut current, &differing);
    for &i in &differing {
        try_step(&mut current, &[i]);
    }
    current
}
