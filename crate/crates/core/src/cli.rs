//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or parse failure, 2 failed verification or
//! golden mismatch, 64 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dgg;
use crate::dynamics::{dynamics_report, GroupDefinitions};
use crate::error::Error;
use crate::hierarchy::{rule_by_name, sequential_reduce};
use crate::isored::reduce;
use crate::netmat::{
    bipartite_adjacency, project_cols, project_rows, to_dot, IncidenceData, NodeSet, RfMatrix,
};
use crate::reproduce::reproduce;
use crate::spectra::verify_spectrum;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// `[[0, A], [A^T, 0]]` built from incidence CSV.
    Bipartite,
    /// `A A^T` built from incidence CSV.
    Rows,
    /// `A^T A` built from incidence CSV.
    Cols,
    /// A square matrix CSV with rational-function entries.
    Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Reduce,
    Hierarchy,
    Project,
    Dynamics,
    Verify,
    Reproduce,
}

/// Validated command-line configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub output: Option<PathBuf>,
    pub rule: String,
    pub mode: Mode,
    pub keep: Option<PathBuf>,
    pub tolerance: f64,
    pub year: i32,
    pub format: Format,
    pub groups: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    pub expected: Option<PathBuf>,
}

#[derive(Parser, Debug)]
#[command(
    name = "isoreduce",
    version,
    about = "Isospectral reductions and core-periphery hierarchies"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Reduce a network onto the nodes listed in a keep file.
    Reduce(CommonArgs),
    /// Build the core-periphery hierarchy by sequential reduction.
    Hierarchy(CommonArgs),
    /// Write a single-mode projection (rows: A A^T, cols: A^T A) as CSV.
    Project(CommonArgs),
    /// Chronological group attendance series and their statistics.
    Dynamics(CommonArgs),
    /// Check numerically that a reduction preserves the spectrum.
    Verify(CommonArgs),
    /// Recompute the DGG results and compare with the stored expectations.
    Reproduce(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Input CSV (incidence data, or a matrix with --mode matrix).
    #[arg(long)]
    input: PathBuf,
    /// Output path; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "min-degree")]
    rule: String,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Keep-set file: one label per line, '#' starts a comment.
    #[arg(long)]
    keep: Option<PathBuf>,
    #[arg(long = "tol", default_value_t = 1e-6)]
    tolerance: f64,
    /// Year completing the M/D dates of the incidence file.
    #[arg(long, default_value_t = dgg::DGG_YEAR)]
    year: i32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Group definitions JSON for `dynamics` and `reproduce`.
    #[arg(long)]
    groups: Option<PathBuf>,
    /// Where `dynamics` writes its summary JSON (standard error when omitted).
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Expectations JSON for `reproduce` (bundled DGG values when omitted).
    #[arg(long)]
    expected: Option<PathBuf>,
}

/// Usage problems, or `--help`/`--version` output with exit code 0.
#[derive(Debug)]
pub struct UsageError {
    pub message: String,
    pub exit_code: i32,
}

pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| UsageError {
        message: e.render().to_string(),
        exit_code: if e.use_stderr() { EXIT_USAGE } else { EXIT_OK },
    })?;
    let (command, args) = match cli.command {
        Sub::Reduce(a) => (Command::Reduce, a),
        Sub::Hierarchy(a) => (Command::Hierarchy, a),
        Sub::Project(a) => (Command::Project, a),
        Sub::Dynamics(a) => (Command::Dynamics, a),
        Sub::Verify(a) => (Command::Verify, a),
        Sub::Reproduce(a) => (Command::Reproduce, a),
    };
    let usage = |message: String| UsageError {
        message,
        exit_code: EXIT_USAGE,
    };
    let mode = args.mode.unwrap_or(Mode::Bipartite);
    if !(args.tolerance > 0.0 && args.tolerance.is_finite()) {
        return Err(usage(format!(
            "--tol must be positive, got {}",
            args.tolerance
        )));
    }
    if rule_by_name(&args.rule).is_none() {
        return Err(usage(format!("unknown rule '{}'", args.rule)));
    }
    match command {
        Command::Project if !matches!(mode, Mode::Rows | Mode::Cols) => {
            return Err(usage("project needs --mode rows or --mode cols".into()));
        }
        Command::Dynamics | Command::Reproduce if mode != Mode::Bipartite => {
            return Err(usage(
                "this command reads incidence data; --mode does not apply".into(),
            ));
        }
        Command::Reduce | Command::Verify if args.keep.is_none() => {
            return Err(usage("--keep is required".into()));
        }
        Command::Dynamics if args.groups.is_none() => {
            return Err(usage("--groups is required".into()));
        }
        _ => {}
    }
    if command == Command::Reduce {
        // ok: any format
    } else if args.format != Format::Json && command != Command::Project {
        return Err(usage("--format applies to reduce only".into()));
    }
    Ok(RunConfig {
        command,
        input: args.input,
        output: args.output,
        rule: args.rule,
        mode,
        keep: args.keep,
        tolerance: args.tolerance,
        year: args.year,
        format: args.format,
        groups: args.groups,
        summary: args.summary,
        expected: args.expected,
    })
}

/// Parses a keep-set file: one label per line, `#` comments, blank lines ignored.
pub fn parse_keep_set(text: &str) -> NodeSet {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or_default().trim())
        .filter(|l| !l.is_empty())
        .collect()
}

enum Failure {
    Io(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn load_incidence(cfg: &RunConfig) -> Result<IncidenceData, Failure> {
    Ok(IncidenceData::from_csv(&read(&cfg.input)?, cfg.year)?)
}

fn load_matrix(cfg: &RunConfig) -> Result<RfMatrix, Failure> {
    if cfg.mode == Mode::Matrix {
        return Ok(RfMatrix::from_csv(&read(&cfg.input)?)?);
    }
    let a = load_incidence(cfg)?;
    Ok(match cfg.mode {
        Mode::Bipartite => bipartite_adjacency(&a),
        Mode::Rows => project_rows(&a),
        Mode::Cols => project_cols(&a),
        Mode::Matrix => unreachable!(),
    })
}

fn execute(cfg: &RunConfig) -> Result<(), Failure> {
    let out = cfg.output.as_deref();
    match cfg.command {
        Command::Reduce => {
            let m = load_matrix(cfg)?;
            let keep = parse_keep_set(&read(cfg.keep.as_deref().expect("validated"))?);
            let r = reduce(&m, &keep)?;
            let text = match cfg.format {
                Format::Json => json_text(&r.to_json()),
                Format::Csv => r.reduced.to_csv(),
                Format::Dot => to_dot(&r.reduced, "reduced"),
            };
            write_out(out, &text)
        }
        Command::Hierarchy => {
            let m = load_matrix(cfg)?;
            let rule = rule_by_name(&cfg.rule).expect("validated");
            let h = sequential_reduce(&m, rule.as_ref())?;
            write_out(out, &json_text(&h.to_json()))
        }
        Command::Project => {
            let m = load_matrix(cfg)?;
            write_out(out, &m.to_csv())
        }
        Command::Dynamics => {
            let a = load_incidence(cfg)?;
            let defs =
                GroupDefinitions::from_json(&read(cfg.groups.as_deref().expect("validated"))?)?;
            let rep = dynamics_report(&a, &defs)?;
            write_out(out, &rep.to_csv())?;
            let summary = json_text(&rep.summary_json());
            match &cfg.summary {
                Some(p) => write_out(Some(p), &summary),
                None => {
                    eprint!("{summary}");
                    Ok(())
                }
            }
        }
        Command::Verify => {
            let m = load_matrix(cfg)?;
            let keep = parse_keep_set(&read(cfg.keep.as_deref().expect("validated"))?);
            let report = verify_spectrum(&m, &keep, cfg.tolerance)?;
            let v = serde_json::to_value(&report).expect("report serializes");
            write_out(out, &json_text(&v))?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Mismatch("spectrum check failed".into()))
            }
        }
        Command::Reproduce => {
            let a = load_incidence(cfg)?;
            let defs = match &cfg.groups {
                Some(p) => GroupDefinitions::from_json(&read(p)?)?,
                None => dgg::groups(),
            };
            let expected_text = match &cfg.expected {
                Some(p) => read(p)?,
                None => dgg::DGG_EXPECTED_JSON.to_string(),
            };
            let expected: serde_json::Value = serde_json::from_str(&expected_text)
                .map_err(|e| Failure::Io(format!("expectations: {e}")))?;
            let rep = reproduce(&a, &defs, &expected)?;
            print!("{}", rep.render());
            if let Some(p) = out {
                write_out(Some(p), &json_text(&rep.computed))?;
            }
            if rep.passed() {
                Ok(())
            } else {
                Err(Failure::Mismatch(
                    "results differ from the expectations".into(),
                ))
            }
        }
    }
}

/// Runs a validated configuration and returns the process exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    match execute(cfg) {
        Ok(()) => EXIT_OK,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("{msg}");
            EXIT_MISMATCH
        }
    }
}

/// Parses `argv` and runs; the binary's entry point.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            if e.exit_code == EXIT_OK {
                print!("{}", e.message);
            } else {
                eprint!("{}", e.message);
                if !e.message.ends_with('\n') {
                    eprintln!();
                }
            }
            e.exit_code
        }
    }
}
