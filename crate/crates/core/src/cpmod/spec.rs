//! JSON module-spec files:
//!
//! ```json
//! { "p": 3, "generators": 3, "relations": [], "tau": [[0,0,1],[1,0,0],[0,1,0]] }
//! ```
//!
//! `relations` lists relation columns (each of length `generators`); `tau`
//! is row-major.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{CpModule, CpModuleError};
use crate::intlinalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub p: u64,
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
    pub tau: Vec<Vec<i64>>,
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("field `{field}`: {source}")]
    Module {
        field: &'static str,
        source: CpModuleError,
    },
}

impl ModuleSpec {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn from_path(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_module(&self) -> Result<CpModule, SpecError> {
        let m = self.generators;
        for (i, col) in self.relations.iter().enumerate() {
            if col.len() != m {
                return Err(SpecError::Field {
                    field: format!("relations[{i}]"),
                    message: format!("expected {m} entries, got {}", col.len()),
                });
            }
        }
        if self.tau.len() != m {
            return Err(SpecError::Field {
                field: "tau".into(),
                message: format!("expected {m} rows, got {}", self.tau.len()),
            });
        }
        for (i, row) in self.tau.iter().enumerate() {
            if row.len() != m {
                return Err(SpecError::Field {
                    field: format!("tau[{i}]"),
                    message: format!("expected {m} entries, got {}", row.len()),
                });
            }
        }
        let columns: Vec<Vec<BigInt>> = self
            .relations
            .iter()
            .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let relations = IntMatrix::from_columns(m, &columns).map_err(|e| SpecError::Field {
            field: "relations".into(),
            message: e.to_string(),
        })?;
        let tau = IntMatrix::from_rows(&self.tau, m).map_err(|e| SpecError::Field {
            field: "tau".into(),
            message: e.to_string(),
        })?;
        CpModule::new(self.p, relations, tau).map_err(|source| SpecError::Module {
            field: match source {
                CpModuleError::NotPrime(_) => "p",
                _ => "tau",
            },
            source,
        })
    }
}
