//! Command-line harness: discriminant sweeps, manifold examples, module
//! cohomology from JSON specs, cubic CSV ingestion and the class-number-one
//! scan. Exit codes: 0 when every check passes, 1 when some check fails,
//! 2 for usage and I/O errors.

mod sweep;

pub use sweep::{quadratic_table, sweep_quadratic, QuadraticRun, SweepConfig};

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::is_prime;
use crate::cpmod::{classify_free, tate, CpModuleError, ModuleSpec, SpecError};
use crate::mfld::{
    check, example_hempel, example_lens, expected_hempel, expected_lens, Expected, ManifoldExample,
    Theorem, TheoremVerdict,
};
use crate::numfield::{
    class_group_data, cubic_rank_check, parse_cubic_file, CubicError, FieldError,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Imaginary quadratic fields of class number one.
pub const CLASS_NUMBER_ONE: [i64; 9] = [-1, -2, -3, -7, -11, -19, -43, -67, -163];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Spec(#[from] SpecError),
    #[error("{0}")]
    Cubic(#[from] CubicError),
    #[error("{0}")]
    Field(#[from] FieldError),
    #[error("{0}")]
    Module(#[from] CpModuleError),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Field(i64),
    Example(String),
    CubicRow(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub subject: Subject,
    pub check: String,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunSummary {
    pub fields_checked: usize,
    pub skipped: usize,
    pub checks_passed: usize,
    pub checks_failed: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Rows rejected before any check ran.
    #[serde(default)]
    pub malformed: Vec<String>,
    pub elapsed_ms: u64,
}

impl RunSummary {
    pub fn exit_code(&self) -> i32 {
        if self.checks_failed == 0 && self.malformed.is_empty() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    fn write_table(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(
            out,
            "checked {} (skipped {}), passed {}, failed {}, {} ms",
            self.fields_checked,
            self.skipped,
            self.checks_passed,
            self.checks_failed,
            self.elapsed_ms
        )?;
        for c in &self.counterexamples {
            let subject = match &c.subject {
                Subject::Field(d) => format!("d = {d}"),
                Subject::Example(name) => name.clone(),
                Subject::CubicRow(row) => format!("row {row}"),
            };
            writeln!(
                out,
                "  FAIL {subject}: {} lhs = {} rhs = {}",
                c.check, c.lhs, c.rhs
            )?;
        }
        for m in &self.malformed {
            writeln!(out, "  {m}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tatelab",
    version,
    about = "Tate cohomology of C_p-modules and ramification-count checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the ramification bounds on Q(√d) for square-free d in a range.
    VerifyQuadratic(VerifyQuadraticArgs),
    /// Run the branch-count checkers on the lens and Hempel families.
    Examples(ExamplesArgs),
    /// Tate cohomology of a C_p-module given as JSON.
    Cohomology {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Check 3-ranks of cyclic cubic class groups from CSV.
    VerifyCubic(VerifyCubicArgs),
    /// List imaginary quadratic fields of class number one down to a bound.
    NineFields {
        #[arg(long, default_value_t = -200, allow_negative_numbers = true)]
        bound: i64,
    },
}

#[derive(Debug, Args)]
pub struct VerifyQuadraticArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub d_min: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub d_max: i64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub fail_fast: bool,
    /// Skip imaginary fields.
    #[arg(long)]
    pub positive_only: bool,
}

#[derive(Debug, Args)]
pub struct ExamplesArgs {
    #[arg(long = "p", value_delimiter = ',', num_args = 0.., default_values_t = [2u64, 3, 5])]
    pub primes: Vec<u64>,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct VerifyCubicArgs {
    #[arg(long)]
    pub csv: PathBuf,
    #[arg(long)]
    pub fail_fast: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

/// Runs a parsed command, writing results to `out`, and returns the exit
/// code. Errors map to [`EXIT_USAGE`].
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::VerifyQuadratic(args) => {
            let config = SweepConfig {
                d_min: args.d_min,
                d_max: args.d_max,
                include_negative: !args.positive_only,
                output_format: args.format,
                parallelism: args.jobs.unwrap_or_else(default_jobs),
                fail_fast: args.fail_fast,
            };
            Ok(cmd_verify_quadratic(&config, out)?.exit_code())
        }
        Command::Examples(args) => {
            Ok(cmd_examples(&args.primes, args.n_max, args.format, out)?.exit_code())
        }
        Command::Cohomology { spec } => cmd_cohomology(&spec, out),
        Command::VerifyCubic(args) => {
            Ok(cmd_verify_cubic(&args.csv, args.fail_fast, args.format, out)?.exit_code())
        }
        Command::NineFields { bound } => cmd_nine_fields(bound, out),
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

pub fn cmd_verify_quadratic(
    config: &SweepConfig,
    out: &mut dyn Write,
) -> Result<RunSummary, CliError> {
    let run = sweep_quadratic(config)?;
    match config.output_format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&run)?)?,
        OutputFormat::Table => {
            write!(out, "{}", quadratic_table(&run))?;
            writeln!(out, "cells are lhs:rhs, '!' marks a failed check")?;
            run.summary.write_table(out)?;
        }
    }
    Ok(run.summary)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleVerdict {
    pub example: String,
    pub p: u64,
    pub s: usize,
    pub verdict: TheoremVerdict,
    pub expected: Expected,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExamplesRun {
    pub verdicts: Vec<ExampleVerdict>,
    pub summary: RunSummary,
}

type ExpectationFn = Box<dyn Fn(Theorem) -> Expected>;

pub fn run_examples(primes: &[u64], n_max: usize) -> Result<ExamplesRun, CliError> {
    let start = Instant::now();
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(CliError::Usage(format!("--p: {p} is not prime")));
    }
    if n_max == 0 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    let mut examples: Vec<(ManifoldExample, ExpectationFn)> = Vec::new();
    for &p in primes {
        examples.push((example_lens(p)?, Box::new(expected_lens)));
        for n in 1..=n_max {
            examples.push((
                example_hempel(p, n)?,
                Box::new(move |t| expected_hempel(t, n)),
            ));
        }
    }
    let mut verdicts = Vec::new();
    let mut summary = RunSummary {
        fields_checked: examples.len(),
        ..RunSummary::default()
    };
    for (e, expected) in &examples {
        for t in Theorem::ALL {
            let verdict = check(t, e)?;
            let expected = expected(t);
            let matches = expected.matches(verdict.outcome());
            if matches {
                summary.checks_passed += 1;
            } else {
                summary.checks_failed += 1;
                summary.counterexamples.push(Counterexample {
                    subject: Subject::Example(e.name.clone()),
                    check: t.name().into(),
                    lhs: verdict.lhs,
                    rhs: verdict.rhs,
                });
            }
            verdicts.push(ExampleVerdict {
                example: e.name.clone(),
                p: e.p,
                s: e.s,
                verdict,
                expected,
                matches,
            });
        }
    }
    summary.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(ExamplesRun { verdicts, summary })
}

pub fn cmd_examples(
    primes: &[u64],
    n_max: usize,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<RunSummary, CliError> {
    let run = run_examples(primes, n_max)?;
    match format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&run)?)?,
        OutputFormat::Table => {
            writeln!(
                out,
                "{:<20} {:<10} {:>4} {:>4}  {:<27} as expected",
                "example", "theorem", "lhs", "rhs", "outcome"
            )?;
            for v in &run.verdicts {
                let outcome = match v.verdict.outcome() {
                    crate::mfld::Outcome::Pass => "pass".to_string(),
                    crate::mfld::Outcome::Fail => "FAIL".to_string(),
                    crate::mfld::Outcome::HypothesisViolated { bare_holds } => format!(
                        "hypothesis violated, {}",
                        if bare_holds { "holds" } else { "fails" }
                    ),
                };
                writeln!(
                    out,
                    "{:<20} {:<10} {:>4} {:>4}  {:<27} {}",
                    v.example,
                    v.verdict.theorem.name(),
                    v.verdict.lhs,
                    v.verdict.rhs,
                    outcome,
                    if v.matches { "yes" } else { "NO" }
                )?;
            }
            run.summary.write_table(out)?;
        }
    }
    Ok(run.summary)
}

pub fn cmd_cohomology(spec: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let module = ModuleSpec::from_path(spec)?.to_module()?;
    let t = tate(&module)?;
    writeln!(out, "p = {}", module.p())?;
    writeln!(out, "group: {}", module.group())?;
    writeln!(out, "H0: {} (dim {})", t.h0, t.dim_h0())?;
    writeln!(out, "H1: {} (dim {})", t.h1, t.dim_h1())?;
    if module.group().is_torsion_free() {
        let m = classify_free(&module)?;
        writeln!(
            out,
            "Z_(p)-type multiplicities: free {}, trivial {}, augmentation {}",
            m.f, m.t, m.a
        )?;
    }
    Ok(EXIT_PASS)
}

pub fn cmd_verify_cubic(
    csv: &Path,
    fail_fast: bool,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<RunSummary, CliError> {
    let start = Instant::now();
    let rows = parse_cubic_file(csv)?;
    let mut records = Vec::new();
    let mut summary = RunSummary::default();
    for row in rows {
        match row {
            Ok(r) => records.push(r),
            Err(e) => {
                summary.malformed.push(e.to_string());
                if fail_fast {
                    break;
                }
            }
        }
    }
    let verdicts = cubic_rank_check(&records);
    summary.fields_checked = verdicts.len();
    for v in &verdicts {
        if v.pass {
            summary.checks_passed += 1;
        } else {
            summary.checks_failed += 1;
            summary.counterexamples.push(Counterexample {
                subject: Subject::CubicRow(v.row),
                check: "rank3".into(),
                lhs: v.lhs,
                rhs: v.rhs,
            });
        }
    }
    summary.elapsed_ms = start.elapsed().as_millis() as u64;
    match format {
        OutputFormat::Json => {
            let doc = serde_json::json!({ "verdicts": verdicts, "summary": summary });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        OutputFormat::Table => {
            writeln!(
                out,
                "{:>5} {:>10} {:>2} {:>6} {:>4}  result",
                "row", "conductor", "s", "rank3", "s-1"
            )?;
            for v in &verdicts {
                writeln!(
                    out,
                    "{:>5} {:>10} {:>2} {:>6} {:>4}  {}",
                    v.row,
                    v.conductor,
                    v.s,
                    v.lhs,
                    v.rhs,
                    if v.pass { "pass" } else { "FAIL" }
                )?;
            }
            summary.write_table(out)?;
        }
    }
    Ok(summary)
}

/// Imaginary fields with `h = 1` down to `bound`, using `class_number`.
/// Separated from the command so tests can substitute a faulty oracle.
pub fn nine_fields_with(
    bound: i64,
    class_number: impl Fn(i64) -> Result<u64, FieldError>,
) -> Result<(Vec<i64>, bool), FieldError> {
    let mut found = Vec::new();
    for d in (bound.min(-1)..=-1).rev() {
        if crate::arith::is_squarefree(d) && class_number(d)? == 1 {
            found.push(d);
        }
    }
    let expected: Vec<i64> = CLASS_NUMBER_ONE
        .iter()
        .copied()
        .filter(|&d| d >= bound)
        .collect();
    let ok = found == expected;
    Ok((found, ok))
}

pub fn cmd_nine_fields(bound: i64, out: &mut dyn Write) -> Result<i32, CliError> {
    let (found, ok) = nine_fields_with(bound, |d| Ok(class_group_data(d)?.class_number()))?;
    let list: Vec<String> = found.iter().map(i64::to_string).collect();
    writeln!(out, "{}", list.join(" "))?;
    writeln!(
        out,
        "{} field(s) with trivial class group in [{bound}, -1]; {}",
        found.len(),
        if ok {
            "matches the known list"
        } else {
            "DIFFERS from the known list"
        }
    )?;
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}
