use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CliError, Counterexample, OutputFormat, RunSummary, Subject};
use crate::arith::is_squarefree;
use crate::numfield::{analyze, FieldRecord, MAX_ABS_D};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub d_min: i64,
    pub d_max: i64,
    pub include_negative: bool,
    pub output_format: OutputFormat,
    pub parallelism: usize,
    pub fail_fast: bool,
}

impl SweepConfig {
    pub fn new(d_min: i64, d_max: i64) -> Self {
        Self {
            d_min,
            d_max,
            include_negative: true,
            output_format: OutputFormat::Table,
            parallelism: 1,
            fail_fast: false,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.d_min > self.d_max {
            return Err(CliError::Usage(format!(
                "--d-min {} exceeds --d-max {}",
                self.d_min, self.d_max
            )));
        }
        if self.d_min < -MAX_ABS_D || self.d_max > MAX_ABS_D {
            return Err(CliError::Usage(format!("|d| must not exceed {MAX_ABS_D}")));
        }
        if self.parallelism == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        Ok(())
    }

    /// Square-free `d ∉ {0, 1}` in range, ordered by `|d|` and then sign,
    /// plus the number of integers skipped.
    pub fn fields(&self) -> (Vec<i64>, usize) {
        let lo = if self.include_negative {
            self.d_min
        } else {
            self.d_min.max(0)
        };
        let mut fields = Vec::new();
        let mut skipped = 0;
        for d in lo..=self.d_max {
            if d != 0 && d != 1 && is_squarefree(d) {
                fields.push(d);
            } else {
                skipped += 1;
            }
        }
        fields.sort_by_key(|&d| (d.unsigned_abs(), d));
        (fields, skipped)
    }
}

/// Per-field reports of a sweep with its summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticRun {
    pub reports: Vec<FieldRecord>,
    pub summary: RunSummary,
}

pub fn sweep_quadratic(config: &SweepConfig) -> Result<QuadraticRun, CliError> {
    config.validate()?;
    let start = Instant::now();
    let (fields, skipped) = config.fields();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;

    // fail-fast works in ordered batches so the first failure in output
    // order is the last report emitted
    let batch = if config.fail_fast {
        4 * config.parallelism
    } else {
        fields.len().max(1)
    };
    let mut reports = Vec::with_capacity(fields.len());
    for chunk in fields.chunks(batch) {
        let results: Vec<_> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&d| analyze(d).map(|r| r.record()))
                .collect()
        });
        let mut stop = false;
        for r in results {
            let record = r?;
            let failed = record.checks.iter().any(|(_, v)| !v.pass);
            reports.push(record);
            if failed && config.fail_fast {
                stop = true;
                break;
            }
        }
        if stop {
            break;
        }
    }

    let mut summary = RunSummary {
        fields_checked: reports.len(),
        skipped,
        ..RunSummary::default()
    };
    for record in &reports {
        for (name, v) in record.checks.iter() {
            if v.pass {
                summary.checks_passed += 1;
            } else {
                summary.checks_failed += 1;
                summary.counterexamples.push(Counterexample {
                    subject: Subject::Field(record.d),
                    check: name.to_string(),
                    lhs: v.lhs,
                    rhs: v.rhs,
                });
            }
        }
    }
    summary.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(QuadraticRun { reports, summary })
}

fn chain(v: &[u64]) -> String {
    if v.is_empty() {
        "1".into()
    } else {
        v.iter()
            .map(|n| format!("Z/{n}"))
            .collect::<Vec<_>>()
            .join("+")
    }
}

pub fn quadratic_table(run: &QuadraticRun) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>8} {:>9} {:>3} {:>2} {:>12} {:>12} {:>3} {:>4}  {:<8} {:<8} {:<8} cor",
        "d", "disc", "s0", "s", "Cl", "Cl+", "h0", "N(e)", "upper", "lower", "gauss"
    );
    for r in &run.reports {
        let cell = |name: &str| {
            r.checks
                .iter()
                .find(|(n, _)| *n == name)
                .map_or("-".to_string(), |(_, v)| {
                    format!("{}{}{}", v.lhs, if v.pass { ":" } else { "!" }, v.rhs)
                })
        };
        let norm = r.unit_norm.map_or("-".to_string(), |n| format!("{n:+}"));
        let _ = writeln!(
            out,
            "{:>8} {:>9} {:>3} {:>2} {:>12} {:>12} {:>3} {:>4}  {:<8} {:<8} {:<8} {}",
            r.d,
            r.discriminant,
            r.s0,
            r.s,
            chain(&r.class_invariants),
            chain(&r.narrow_invariants),
            r.dim_h0_cl,
            norm,
            cell("upper_nf"),
            cell("lower_nf"),
            cell("gauss_identity"),
            cell("cor_lower"),
        );
    }
    out
}
