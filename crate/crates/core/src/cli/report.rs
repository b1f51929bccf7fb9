//! Report objects printed by the command-line front end.

use std::fmt::Write as _;

use serde::Serialize;

use crate::combinators::{combine, combine_virtual_sampling, CombineError};
use crate::desiderata::{DesideratumReport, Verdict};
use crate::estimates::{CalibrationPolicy, CombinedEstimate, Method, SourceEstimate};
use crate::numfmt::{self, fmt_g17};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SourceDiagnostics {
    pub label: Option<String>,
    pub n_i: f64,
    pub u_i: f64,
}

/// Virtual-sampling intermediates in standard-deviation units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsBlock {
    pub v_star: f64,
    pub sources: Vec<SourceDiagnostics>,
    pub n: f64,
    pub u_bar: f64,
    pub between_variance: f64,
    pub v: f64,
}

/// One method's resultant, or why it has none.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CombineReport {
    pub method: Method,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
    #[serde(serialize_with = "numfmt::serialize_opt_f64")]
    pub value: Option<f64>,
    #[serde(serialize_with = "numfmt::serialize_opt_f64")]
    pub uncertainty: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<DiagnosticsBlock>,
}

impl CombineReport {
    fn ok(c: CombinedEstimate) -> Self {
        Self {
            method: c.method,
            status: Status::Ok,
            reason: None,
            value: Some(c.value),
            uncertainty: Some(c.uncertainty),
            diagnostics: None,
        }
    }

    fn undefined(method: Method, err: CombineError) -> Self {
        Self {
            method,
            status: Status::Undefined,
            reason: Some(err.reason()),
            value: None,
            uncertainty: None,
            diagnostics: None,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }
}

/// Runs one method. Diagnostics are attached only when requested and the
/// method is virtual sampling with a defined resultant.
pub fn build_combine_report(
    method: Method,
    estimates: &[SourceEstimate],
    policy: &CalibrationPolicy,
    with_diagnostics: bool,
) -> CombineReport {
    if method == Method::VirtualSampling && with_diagnostics {
        return match combine_virtual_sampling(estimates, policy) {
            Ok((c, d)) => {
                let sources = estimates
                    .iter()
                    .zip(d.sample_sizes.iter().zip(&d.u_values))
                    .map(|(e, (&n_i, &u_i))| SourceDiagnostics {
                        label: e.label().map(str::to_owned),
                        n_i,
                        u_i,
                    })
                    .collect();
                CombineReport {
                    diagnostics: Some(DiagnosticsBlock {
                        v_star: d.v_star,
                        sources,
                        n: d.n,
                        u_bar: d.u_bar,
                        between_variance: d.between_variance,
                        v: d.v,
                    }),
                    ..CombineReport::ok(c)
                }
            }
            Err(e) => CombineReport::undefined(method, e),
        };
    }
    match combine(method, estimates, policy) {
        Ok(c) => CombineReport::ok(c),
        Err(e) => CombineReport::undefined(method, e),
    }
}

/// Every method, in [`Method::ALL`] order.
pub fn build_compare_rows(estimates: &[SourceEstimate], policy: &CalibrationPolicy) -> Vec<CombineReport> {
    Method::ALL
        .iter()
        .map(|&m| build_combine_report(m, estimates, policy, false))
        .collect()
}

#[derive(Debug, Serialize)]
pub struct CompareReport<'a> {
    pub sigma_scale: f64,
    pub rows: &'a [CombineReport],
}

#[derive(Debug, Serialize)]
pub struct AuditReport<'a> {
    pub method: Method,
    pub seed: u64,
    pub cases: usize,
    pub tolerance: f64,
    pub weak: bool,
    pub all_passed: bool,
    pub reports: &'a [DesideratumReport],
}

fn cell(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), fmt_g17)
}

/// Fixed-width table of combine/compare rows.
pub fn render_rows_table(rows: &[CombineReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<18} {:<10} {:>24} {:>24}  reason",
        "method", "status", "value", "uncertainty"
    );
    for r in rows {
        let status = if r.is_ok() { "ok" } else { "undefined" };
        let line = format!(
            "{:<18} {:<10} {:>24} {:>24}  {}",
            r.method.as_str(),
            status,
            cell(r.value),
            cell(r.uncertainty),
            r.reason.unwrap_or("")
        );
        let _ = writeln!(out, "{}", line.trim_end());
    }
    out
}

/// Extra table lines for a diagnostics block.
pub fn render_diagnostics_table(d: &DiagnosticsBlock) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "v_star            {}", fmt_g17(d.v_star));
    let _ = writeln!(out, "n                 {}", fmt_g17(d.n));
    let _ = writeln!(out, "u_bar             {}", fmt_g17(d.u_bar));
    let _ = writeln!(out, "between_variance  {}", fmt_g17(d.between_variance));
    let _ = writeln!(out, "v                 {}", fmt_g17(d.v));
    let _ = writeln!(out, "{:<6} {:<16} {:>24} {:>24}", "source", "label", "n_i", "u_i");
    for (i, s) in d.sources.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:<6} {:<16} {:>24} {:>24}",
            i + 1,
            s.label.as_deref().unwrap_or("-"),
            fmt_g17(s.n_i),
            fmt_g17(s.u_i)
        );
    }
    out
}

pub fn render_audit_table(reports: &[DesideratumReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<4} {:<13} {:<6} {:<15} {:>10} {:>10} {:>10}",
        "id", "name", "form", "verdict", "cases", "applicable", "violations"
    );
    for r in reports {
        let verdict = match r.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        };
        let _ = writeln!(
            out,
            "{:<4} {:<13} {:<6} {:<15} {:>10} {:>10} {:>10}",
            r.id.to_string(),
            r.name,
            if r.weak { "weak" } else { "strict" },
            verdict,
            r.cases_run,
            r.applicable,
            r.violation_count
        );
        for c in &r.violations {
            let _ = writeln!(out, "     case {}: {}", c.case, c.violated);
        }
    }
    out
}
