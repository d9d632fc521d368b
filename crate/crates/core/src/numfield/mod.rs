//! Quadratic fields `Q(√d)`: discriminants, ramification, prime splitting,
//! form class groups with the Galois involution, fundamental units, and the
//! ramification-count checks built on their Tate cohomology. Cyclic cubic
//! class-group data is ingested from CSV.

mod checks;
mod classgroup;
mod cubic;
mod forms;
mod kronecker;
mod units;

pub use checks::{
    analyze, check_cor_lower_nf, check_lower_nf, check_upper_nf, gauss_identity, nine_fields_check,
    CheckVerdict, FieldChecks, FieldRecord, GaussIdentity, QuadraticFieldReport,
};
pub use classgroup::{class_group, class_group_data, ClassGroupData, FormClassGroup};
pub use cubic::{
    cubic_rank_check, parse_cubic_csv, parse_cubic_file, CubicError, CubicRecord, CubicRow,
    CubicVerdict,
};
pub use forms::BinaryQuadraticForm;
pub use kronecker::{classify_prime, kronecker, splitting_density, PrimeBehavior, SplitDensity};
pub use units::{fundamental_unit, unit_module, FundamentalUnit};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_squarefree, prime_divisors};
use crate::cpmod::CpModuleError;
use crate::intlinalg::LinalgError;

/// Largest |d| accepted; keeps form arithmetic comfortably inside i128.
pub const MAX_ABS_D: i64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("NotSquareFree: d = {0} must be square-free and not 0 or 1")]
    NotSquareFree(i64),
    #[error("NotReal: d = {0} is negative")]
    NotReal(i64),
    #[error("|d| = {0} exceeds the supported range")]
    OutOfRange(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(transparent)]
    Module(#[from] CpModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `Q(√d)` for square-free `d ∉ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticField {
    d: i64,
    discriminant: i64,
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<Self, FieldError> {
        if d.unsigned_abs() > MAX_ABS_D as u64 {
            return Err(FieldError::OutOfRange(d));
        }
        if d == 1 || !is_squarefree(d) {
            return Err(FieldError::NotSquareFree(d));
        }
        let discriminant = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        Ok(Self { d, discriminant })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn is_real(&self) -> bool {
        self.d > 0
    }
}

/// Ramified primes of `Q(√d)/Q`. The archimedean place ramifies exactly
/// for imaginary fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationData {
    pub finite_ramified: Vec<u64>,
    pub s0: usize,
    pub s_inf: usize,
    pub s: usize,
}

pub fn ramification(d: i64) -> Result<RamificationData, FieldError> {
    let field = QuadraticField::new(d)?;
    Ok(field.ramification())
}

impl QuadraticField {
    pub fn ramification(&self) -> RamificationData {
        let finite_ramified = prime_divisors(self.discriminant.unsigned_abs());
        let s0 = finite_ramified.len();
        let s_inf = usize::from(self.d < 0);
        RamificationData {
            finite_ramified,
            s0,
            s_inf,
            s: s0 + s_inf,
        }
    }
}
