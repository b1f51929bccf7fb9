//! Executable desiderata for combination rules.
//!
//! Each desideratum is checked on seeded random scenarios built to satisfy its
//! precondition. Strict inequalities must hold by more than
//! `tolerance * scale`, where `scale` is the largest magnitude among the
//! scenario's values and finite uncertainties (at least 1). Weak forms only
//! forbid worsening beyond that margin.
//!
//! | Id | Name | Checked property |
//! |----|------|------------------|
//! | D1 | Range | value within the source values |
//! | D2 | Monotonicity | raising one value raises the resultant value |
//! | D3 | Symmetry | two equally certain sources: value at their midpoint |
//! | D4 | Certainty | sharpening a source pulls the value toward it |
//! | D5 | Ignorance | an utterly uncertain source has no effect (exact and limit forms) |
//! | D6 | Continuity | output change vanishes along an epsilon ladder |
//! | D7 | Composition | loosening the central sources raises the uncertainty |
//! | D8 | Support | an agreeing extra source lowers the uncertainty |
//! | D9 | Resolution | a pair moving toward the value lowers the uncertainty |
//! | D10 | Sufficiency | gap between uncertainty levels vanishes as sources accumulate |

mod check;
mod scenario;

pub use check::{check, shrink, CaseOutcome, Observation};
pub use scenario::{
    case_rng, draw_without_replacement, generate_scenario, sufficiency_population, Scenario,
    ScenarioDetail, ScenarioGenerator, CONTINUITY_LADDER, IGNORANCE_LADDER, SUFFICIENCY_POPULATION,
    SUFFICIENCY_SIZES,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::estimates::{Method, SourceEstimate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DesideratumId {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    D8,
    D9,
    D10,
}

impl DesideratumId {
    pub const ALL: [DesideratumId; 10] = [
        DesideratumId::D1,
        DesideratumId::D2,
        DesideratumId::D3,
        DesideratumId::D4,
        DesideratumId::D5,
        DesideratumId::D6,
        DesideratumId::D7,
        DesideratumId::D8,
        DesideratumId::D9,
        DesideratumId::D10,
    ];

    pub fn number(&self) -> u8 {
        *self as u8 + 1
    }

    pub fn name(&self) -> &'static str {
        match self {
            DesideratumId::D1 => "Range",
            DesideratumId::D2 => "Monotonicity",
            DesideratumId::D3 => "Symmetry",
            DesideratumId::D4 => "Certainty",
            DesideratumId::D5 => "Ignorance",
            DesideratumId::D6 => "Continuity",
            DesideratumId::D7 => "Composition",
            DesideratumId::D8 => "Support",
            DesideratumId::D9 => "Resolution",
            DesideratumId::D10 => "Sufficiency",
        }
    }

    /// Whether the desideratum states a strict change that also has a weak
    /// form accepting no change.
    pub fn has_weak_form(&self) -> bool {
        matches!(
            self,
            DesideratumId::D2
                | DesideratumId::D4
                | DesideratumId::D7
                | DesideratumId::D8
                | DesideratumId::D9
                | DesideratumId::D10
        )
    }
}

impl fmt::Display for DesideratumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}", self.number())
    }
}

impl Serialize for DesideratumId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown desideratum `{0}` (expected D1..D10 or a name such as `support`)")]
pub struct UnknownDesideratum(pub String);

impl FromStr for DesideratumId {
    type Err = UnknownDesideratum;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        DesideratumId::ALL
            .into_iter()
            .find(|id| t.eq_ignore_ascii_case(&id.to_string()) || t.eq_ignore_ascii_case(id.name()))
            .ok_or_else(|| UnknownDesideratum(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AuditConfigError {
    #[error("case count must be at least 1")]
    NoCases,
    #[error("tolerance must be finite and positive, got {0}")]
    InvalidTolerance(f64),
    #[error("source count range {0}..={1} is empty or starts below 1")]
    InvalidSourceCounts(usize, usize),
}

/// Settings for one audit run.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditConfig {
    pub seed: u64,
    cases: usize,
    tolerance: f64,
    min_sources: usize,
    max_sources: usize,
    /// Check the weak forms of D2, D4, D7-D10, where no change also passes.
    pub weak: bool,
    /// Counterexamples kept per report; all violations are still counted.
    pub max_counterexamples: usize,
}

impl AuditConfig {
    pub fn new(seed: u64, cases: usize, tolerance: f64) -> Result<Self, AuditConfigError> {
        if cases == 0 {
            return Err(AuditConfigError::NoCases);
        }
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(AuditConfigError::InvalidTolerance(tolerance));
        }
        Ok(Self {
            seed,
            cases,
            tolerance,
            ..Self::default()
        })
    }

    /// Inclusive range of source counts for scenarios whose size is free.
    /// Desiderata that need more sources raise the lower end themselves.
    pub fn with_source_counts(mut self, min: usize, max: usize) -> Result<Self, AuditConfigError> {
        if min == 0 || min > max {
            return Err(AuditConfigError::InvalidSourceCounts(min, max));
        }
        self.min_sources = min;
        self.max_sources = max;
        Ok(self)
    }

    pub fn with_weak(mut self, weak: bool) -> Self {
        self.weak = weak;
        self
    }

    pub fn with_max_counterexamples(mut self, n: usize) -> Self {
        self.max_counterexamples = n;
        self
    }

    pub fn cases(&self) -> usize {
        self.cases
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn source_counts(&self) -> (usize, usize) {
        (self.min_sources, self.max_sources)
    }
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            cases: 1000,
            tolerance: 1e-9,
            min_sources: 2,
            max_sources: 6,
            weak: false,
            max_counterexamples: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub case: usize,
    pub base: Vec<SourceEstimate>,
    pub perturbed: Vec<SourceEstimate>,
    pub observed: Vec<Observation>,
    pub violated: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesideratumReport {
    pub id: DesideratumId,
    pub name: &'static str,
    pub method: Method,
    pub weak: bool,
    pub cases_run: usize,
    /// Cases where the method produced every resultant the check needed.
    pub applicable: usize,
    pub violation_count: usize,
    pub violations: Vec<Counterexample>,
    pub verdict: Verdict,
}

impl DesideratumReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Runs `cfg.cases()` scenarios for `id` against `method`.
///
/// Case `i` draws from its own RNG stream derived from `(seed, id, i)`, so a
/// report does not depend on which other desiderata or methods were audited.
pub fn run_desideratum(id: DesideratumId, method: Method, cfg: &AuditConfig) -> DesideratumReport {
    let generator = ScenarioGenerator::new(cfg);
    let mut applicable = 0;
    let mut violation_count = 0;
    let mut violations = Vec::new();

    for case in 0..cfg.cases() {
        let scenario = generator.generate(id, &mut case_rng(cfg.seed, id, case));
        match check(&scenario, method, cfg) {
            CaseOutcome::NotApplicable => {}
            CaseOutcome::Satisfied => applicable += 1,
            CaseOutcome::Violated { .. } => {
                applicable += 1;
                violation_count += 1;
                if violations.len() < cfg.max_counterexamples {
                    let small = shrink(&scenario, method, cfg);
                    let CaseOutcome::Violated {
                        observed,
                        inequality,
                    } = check(&small, method, cfg)
                    else {
                        unreachable!("shrinking keeps the violation");
                    };
                    violations.push(Counterexample {
                        case,
                        base: small.base,
                        perturbed: small.perturbed,
                        observed,
                        violated: inequality,
                    });
                }
            }
        }
    }

    let verdict = if applicable == 0 {
        Verdict::NotApplicable
    } else if violation_count == 0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    DesideratumReport {
        id,
        name: id.name(),
        method,
        weak: cfg.weak && id.has_weak_form(),
        cases_run: cfg.cases(),
        applicable,
        violation_count,
        violations,
        verdict,
    }
}

/// Audits `method` against each of `ids`.
pub fn run_audit(ids: &[DesideratumId], method: Method, cfg: &AuditConfig) -> Vec<DesideratumReport> {
    ids.iter().map(|&id| run_desideratum(id, method, cfg)).collect()
}
