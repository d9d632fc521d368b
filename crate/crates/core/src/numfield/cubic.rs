//! Class-group data of cyclic cubic fields read from CSV, checked against
//! the 3-rank bound `rank₃ Cl ≥ s - 1`.
//!
//! Expected columns: `conductor,class_invariants` and optionally `s`.
//! Invariants are a `;`-separated divisibility chain, empty for the
//! trivial group.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::factor;

#[derive(Debug, Error)]
pub enum CubicError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("bad header: {0}")]
    Header(String),
    #[error("MalformedRecord at row {row}: {message}")]
    MalformedRecord { row: u64, message: String },
}

/// One CSV row as text.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct CubicRow {
    pub conductor: String,
    pub class_invariants: String,
    #[serde(default)]
    pub s: Option<String>,
}

/// A validated row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicRecord {
    pub row: u64,
    pub conductor: u64,
    pub ramified: Vec<u64>,
    pub class_invariants: Vec<u64>,
}

impl CubicRecord {
    pub fn s(&self) -> usize {
        self.ramified.len()
    }

    pub fn rank3(&self) -> usize {
        self.class_invariants
            .iter()
            .filter(|&&n| n % 3 == 0)
            .count()
    }

    pub fn from_row(row: u64, raw: &CubicRow) -> Result<Self, CubicError> {
        let bad = |message: String| CubicError::MalformedRecord { row, message };
        let conductor: u64 = raw
            .conductor
            .trim()
            .parse()
            .map_err(|_| bad(format!("conductor {:?} is not an integer", raw.conductor)))?;
        let ramified = admissible_conductor(conductor)
            .ok_or_else(|| bad(format!("{conductor} is not a cyclic cubic conductor")))?;

        let text = raw.class_invariants.trim();
        let class_invariants = if text.is_empty() {
            Vec::new()
        } else {
            text.split(';')
                .map(|t| t.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad(format!("class invariants {text:?} are not integers")))?
        };
        if class_invariants.iter().any(|&n| n < 2) {
            return Err(bad("invariant factors must exceed 1".into()));
        }
        if class_invariants.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(bad(format!("{text:?} is not a divisibility chain")));
        }

        if let Some(s) = raw.s.as_deref().map(str::trim).filter(|s| !s.is_empty()) {
            let s: usize = s
                .parse()
                .map_err(|_| bad(format!("s {s:?} is not an integer")))?;
            if s != ramified.len() {
                return Err(bad(format!(
                    "s = {s} but conductor {conductor} has {} prime divisors",
                    ramified.len()
                )));
            }
        }
        Ok(Self {
            row,
            conductor,
            ramified,
            class_invariants,
        })
    }
}

/// Prime divisors of `f` when `f` is the conductor of a cyclic cubic field:
/// distinct primes `≡ 1 (mod 3)`, times `9` at most once.
fn admissible_conductor(f: u64) -> Option<Vec<u64>> {
    if f < 7 {
        return None;
    }
    let factors = factor(f);
    let ok = factors.iter().all(|&(q, e)| match q {
        3 => e == 2,
        _ => e == 1 && q % 3 == 1,
    });
    ok.then(|| factors.into_iter().map(|(q, _)| q).collect())
}

/// Parses a CSV stream. The outer error covers unreadable input and bad
/// headers; each data row yields its own result so callers can continue
/// past malformed rows.
pub fn parse_cubic_csv<R: Read>(
    input: R,
) -> Result<Vec<Result<CubicRecord, CubicError>>, CubicError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| CubicError::Header(e.to_string()))?
        .clone();
    for required in ["conductor", "class_invariants"] {
        if !headers.iter().any(|h| h == required) {
            return Err(CubicError::Header(format!("missing column {required:?}")));
        }
    }
    let mut out = Vec::new();
    for (i, result) in reader.records().enumerate() {
        // header is line 1
        let fallback = i as u64 + 2;
        let parsed = result.and_then(|rec| {
            let row = rec.position().map_or(fallback, |p| p.line());
            rec.deserialize::<CubicRow>(Some(&headers))
                .map(|raw| (row, raw))
        });
        out.push(match parsed {
            Ok((row, raw)) => CubicRecord::from_row(row, &raw),
            Err(e) => Err(CubicError::MalformedRecord {
                row: e.position().map_or(fallback, |p| p.line()),
                message: e.to_string(),
            }),
        });
    }
    Ok(out)
}

pub fn parse_cubic_file(
    path: impl AsRef<Path>,
) -> Result<Vec<Result<CubicRecord, CubicError>>, CubicError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| CubicError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_cubic_csv(file)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicVerdict {
    pub row: u64,
    pub conductor: u64,
    pub s: usize,
    /// `rank₃ Cl`
    pub lhs: i64,
    /// `s - 1`
    pub rhs: i64,
    pub pass: bool,
}

pub fn cubic_rank_check(records: &[CubicRecord]) -> Vec<CubicVerdict> {
    records
        .iter()
        .map(|r| {
            let lhs = r.rank3() as i64;
            let rhs = r.s() as i64 - 1;
            CubicVerdict {
                row: r.row,
                conductor: r.conductor,
                s: r.s(),
                lhs,
                rhs,
                pass: lhs >= rhs,
            }
        })
        .collect()
}
