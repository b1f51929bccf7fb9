//! Command-line front end: `combine`, `compare` and `audit`.
//!
//! Exit codes: 0 on success, 1 when a resultant is undefined or an audited
//! desideratum fails, 2 on usage or input errors.

mod input;
mod report;

pub use input::{parse_estimates, InputError, InputFormat};
pub use report::{
    build_combine_report, build_compare_rows, render_audit_table, render_diagnostics_table,
    render_rows_table, AuditReport, CombineReport, CompareReport, DiagnosticsBlock,
    SourceDiagnostics, Status,
};

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::desiderata::{run_audit, AuditConfig, DesideratumId};
use crate::estimates::{CalibrationPolicy, Method, SourceEstimate};
use crate::numfmt::to_json_line;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNDEFINED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "estfuse", version, about = "Combine uncertain estimates and audit combination rules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Combine the estimates in a file with one method.
    Combine {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "virtual-sampling")]
        method: Method,
        /// Print virtual-sampling intermediates.
        #[arg(long)]
        diagnostics: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Combine the estimates in a file with every method.
    Compare {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Check a method against the desiderata on seeded random scenarios.
    Audit {
        #[arg(long, default_value = "virtual-sampling")]
        method: Method,
        /// D1..D10, a desideratum name, or `all`. Repeatable.
        #[arg(long = "desideratum", short = 'd', default_value = "all")]
        desiderata: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, env = "FUSE_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Check the weak forms, where no change also passes.
        #[arg(long)]
        weak: bool,
        #[arg(long, default_value_t = 2)]
        min_sources: usize,
        #[arg(long, default_value_t = 6)]
        max_sources: usize,
        /// Counterexamples kept per desideratum.
        #[arg(long, default_value_t = 3)]
        max_counterexamples: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Input file, or `-` for standard input.
    input: PathBuf,
    /// Multiplier mapping a reported uncertainty to a standard deviation.
    #[arg(long, default_value_t = 1.0)]
    sigma_scale: f64,
    #[arg(long, default_value = "auto")]
    input_format: InputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

/// Runs the CLI with explicit streams and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdin, stdout) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Process entry point for the binary.
pub fn main() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn load(args: &InputArgs, stdin: &mut dyn Read) -> Result<(Vec<SourceEstimate>, CalibrationPolicy), Failure> {
    let policy = CalibrationPolicy::new(args.sigma_scale).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut text = String::new();
    if args.input.as_os_str() == "-" {
        stdin.read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(&args.input)
            .map_err(|e| Failure::Usage(format!("{}: {e}", args.input.display())))?;
    }
    let estimates =
        parse_estimates(&text, args.input_format).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok((estimates, policy))
}

fn dispatch(command: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Combine {
            input,
            method,
            diagnostics,
            format,
        } => {
            let (estimates, policy) = load(&input, stdin)?;
            let report = build_combine_report(method, &estimates, &policy, diagnostics);
            match format {
                OutputFormat::Json => writeln!(out, "{}", to_json_line(&report))?,
                OutputFormat::Table => {
                    out.write_all(render_rows_table(std::slice::from_ref(&report)).as_bytes())?;
                    if let Some(d) = &report.diagnostics {
                        out.write_all(render_diagnostics_table(d).as_bytes())?;
                    }
                }
            }
            Ok(if report.is_ok() { EXIT_OK } else { EXIT_UNDEFINED })
        }
        Command::Compare { input, format } => {
            let (estimates, policy) = load(&input, stdin)?;
            let rows = build_compare_rows(&estimates, &policy);
            match format {
                OutputFormat::Json => {
                    let report = CompareReport {
                        sigma_scale: policy.sigma_scale(),
                        rows: &rows,
                    };
                    writeln!(out, "{}", to_json_line(&report))?
                }
                OutputFormat::Table => out.write_all(render_rows_table(&rows).as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Audit {
            method,
            desiderata,
            cases,
            seed,
            tolerance,
            weak,
            min_sources,
            max_sources,
            max_counterexamples,
            format,
        } => {
            let ids = parse_ids(&desiderata)?;
            let cfg = AuditConfig::new(seed, cases, tolerance)
                .and_then(|c| c.with_source_counts(min_sources, max_sources))
                .map_err(|e| Failure::Usage(e.to_string()))?
                .with_weak(weak)
                .with_max_counterexamples(max_counterexamples);
            let reports = run_audit(&ids, method, &cfg);
            let all_passed = reports.iter().all(|r| r.passed());
            match format {
                OutputFormat::Json => {
                    let report = AuditReport {
                        method,
                        seed,
                        cases,
                        tolerance,
                        weak,
                        all_passed,
                        reports: &reports,
                    };
                    writeln!(out, "{}", to_json_line(&report))?
                }
                OutputFormat::Table => out.write_all(render_audit_table(&reports).as_bytes())?,
            }
            Ok(if all_passed { EXIT_OK } else { EXIT_UNDEFINED })
        }
    }
}

fn parse_ids(raw: &[String]) -> Result<Vec<DesideratumId>, Failure> {
    let mut ids = Vec::new();
    for token in raw.iter().flat_map(|s| s.split(',')) {
        if token.trim().eq_ignore_ascii_case("all") {
            ids.extend(DesideratumId::ALL);
        } else {
            ids.push(token.parse().map_err(|e: crate::desiderata::UnknownDesideratum| {
                Failure::Usage(e.to_string())
            })?);
        }
    }
    ids.sort();
    ids.dedup();
    Ok(ids)
}
