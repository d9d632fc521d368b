//! Fundamental units of real quadratic orders `O = Z[ω]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{FieldError, QuadraticField};
use crate::cpmod::CpModule;

/// `x + y·ω` with `ω = √d` for `d ≢ 1 (mod 4)` and `ω = (1 + √d)/2`
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalUnit {
    pub d: i64,
    pub x: BigInt,
    pub y: BigInt,
    pub norm: i8,
}

impl FundamentalUnit {
    pub fn half_integral(&self) -> bool {
        self.d.rem_euclid(4) == 1
    }

    /// Coordinates `(u, v)` with unit `= (u + v√d) / 2`.
    pub fn halves(&self) -> (BigInt, BigInt) {
        if self.half_integral() {
            (BigInt::from(2) * &self.x + &self.y, self.y.clone())
        } else {
            (BigInt::from(2) * &self.x, BigInt::from(2) * &self.y)
        }
    }

    /// Field norm computed from the coordinates.
    pub fn exact_norm(&self) -> BigInt {
        omega_norm(self.d, &self.x, &self.y)
    }
}

impl fmt::Display for FundamentalUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let omega = if self.half_integral() {
            format!("(1+√{})/2", self.d)
        } else {
            format!("√{}", self.d)
        };
        write!(f, "{} + {}·{}", self.x, self.y, omega)
    }
}

fn omega_norm(d: i64, x: &BigInt, y: &BigInt) -> BigInt {
    if d.rem_euclid(4) == 1 {
        x * x + x * y - BigInt::from((d - 1) / 4) * y * y
    } else {
        x * x - BigInt::from(d) * y * y
    }
}

/// Smallest unit `> 1`, read off the continued fraction of `ω`: the first
/// convergent `p/q` whose associated element has norm `±1`.
pub fn fundamental_unit(d: i64) -> Result<FundamentalUnit, FieldError> {
    let field = QuadraticField::new(d)?;
    if !field.is_real() {
        return Err(FieldError::NotReal(d));
    }
    let half = d.rem_euclid(4) == 1;
    let dd = d as i128;
    let root = dd.sqrt();
    // ω = (P + √d) / Q
    let (mut pp, mut qq): (i128, i128) = if half { (1, 2) } else { (0, 1) };
    let (mut p_prev, mut p_cur) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q_cur) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (pp + root) / qq;
        let next_p = BigInt::from(a) * &p_cur + &p_prev;
        let next_q = BigInt::from(a) * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, next_p);
        q_prev = std::mem::replace(&mut q_cur, next_q);

        let (x, y) = if half {
            (&p_cur - &q_cur, q_cur.clone())
        } else {
            (p_cur.clone(), q_cur.clone())
        };
        let norm = omega_norm(d, &x, &y);
        if norm == BigInt::one() || norm == -BigInt::one() {
            let norm = if norm.is_one() { 1 } else { -1 };
            return Ok(FundamentalUnit { d, x, y, norm });
        }

        pp = a * qq - pp;
        qq = (dd - pp * pp) / qq;
    }
}

/// Units modulo torsion with the Galois action: `Z` with `τ = -1` for real
/// fields, the zero module otherwise.
pub fn unit_module(d: i64) -> Result<CpModule, FieldError> {
    let field = QuadraticField::new(d)?;
    Ok(if field.is_real() {
        CpModule::augmentation_ideal(2)?
    } else {
        CpModule::trivial(2, 0)?
    })
}
