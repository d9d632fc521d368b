//! Ramification-count inequalities for `Q(√d)/Q` evaluated on computed
//! class groups and unit modules.

use serde::{Deserialize, Serialize};

use super::classgroup::{class_group_data, ClassGroupData};
use super::units::{unit_module, FundamentalUnit};
use super::{FieldError, QuadraticField, RamificationData};
use crate::arith::is_squarefree;
use crate::cpmod::{tate, CpModule};

/// Outcome of one inequality check with both sides recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
    pub hypotheses_met: bool,
}

impl CheckVerdict {
    fn new(lhs: i64, rhs: i64, pass: bool) -> Self {
        Self {
            lhs,
            rhs,
            pass,
            hypotheses_met: true,
        }
    }

    pub fn is_equality(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `s - dim Cl^{C_2}` together with the fundamental-unit norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussIdentity {
    pub value: i64,
    pub norm: i8,
    /// `value ∈ {1, 2}`.
    pub in_range: bool,
    /// `value = 1` exactly when the norm is `-1`.
    pub correlation_holds: bool,
}

impl GaussIdentity {
    /// As a check: lhs is the value, rhs the value predicted by the norm.
    pub fn verdict(&self) -> CheckVerdict {
        let predicted = if self.norm == -1 { 1 } else { 2 };
        CheckVerdict::new(
            self.value,
            predicted,
            self.in_range && self.correlation_holds,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldChecks {
    pub upper_nf: CheckVerdict,
    pub lower_nf: CheckVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauss_identity: Option<CheckVerdict>,
    pub cor_lower: CheckVerdict,
}

impl FieldChecks {
    /// `(name, verdict)` pairs in report order.
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &CheckVerdict)> {
        [
            Some(("upper_nf", &self.upper_nf)),
            Some(("lower_nf", &self.lower_nf)),
            self.gauss_identity.as_ref().map(|v| ("gauss_identity", v)),
            Some(("cor_lower", &self.cor_lower)),
        ]
        .into_iter()
        .flatten()
    }
}

/// Everything computed for one field.
#[derive(Clone, Debug)]
pub struct QuadraticFieldReport {
    pub field: QuadraticField,
    pub ramification: RamificationData,
    pub class_group: CpModule,
    pub narrow_invariants: Vec<u64>,
    pub class_number: u64,
    pub dim_cl2: usize,
    pub dim_h0_cl: usize,
    pub dim_h1_cl: usize,
    pub unit: Option<FundamentalUnit>,
    pub unit_h1_dim: usize,
    pub gauss: Option<GaussIdentity>,
    pub checks: FieldChecks,
}

/// Flat serializable form of a [`QuadraticFieldReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub d: i64,
    pub discriminant: i64,
    pub s0: usize,
    pub s_inf: usize,
    pub s: usize,
    pub class_invariants: Vec<u64>,
    pub narrow_invariants: Vec<u64>,
    pub dim_h0_cl: usize,
    pub dim_h1_cl: usize,
    pub unit_norm: Option<i8>,
    pub unit_h1_dim: usize,
    pub checks: FieldChecks,
}

impl QuadraticFieldReport {
    pub fn record(&self) -> FieldRecord {
        FieldRecord {
            d: self.field.d(),
            discriminant: self.field.discriminant(),
            s0: self.ramification.s0,
            s_inf: self.ramification.s_inf,
            s: self.ramification.s,
            class_invariants: self.class_group.group().invariants_u64(),
            narrow_invariants: self.narrow_invariants.clone(),
            dim_h0_cl: self.dim_h0_cl,
            dim_h1_cl: self.dim_h1_cl,
            unit_norm: self.unit.as_ref().map(|u| u.norm),
            unit_h1_dim: self.unit_h1_dim,
            checks: self.checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, v)| v.pass)
    }
}

pub fn analyze(d: i64) -> Result<QuadraticFieldReport, FieldError> {
    let data = class_group_data(d)?;
    report_from(data)
}

fn report_from(data: ClassGroupData) -> Result<QuadraticFieldReport, FieldError> {
    let ClassGroupData {
        field,
        narrow,
        unit,
        module,
        ..
    } = data;
    let ramification = field.ramification();
    let cl = tate(&module)?;
    let units = tate(&unit_module(field.d())?)?;
    let fixed = module.fixed_points();
    let class_number: u64 = module.group().invariants_u64().iter().product();
    let dim_cl2 = module.group().p_rank(2);

    let s0 = ramification.s0 as i64;
    let s = ramification.s as i64;
    let h0 = cl.dim_h0() as i64;

    let upper_nf = {
        let rhs = 1 + h0 + units.dim_h1() as i64;
        CheckVerdict::new(s0, rhs, s0 <= rhs)
    };
    // the hypothesis on the base field Q is vacuous
    let lower_nf = CheckVerdict::new(s, 1 + h0, s > h0);
    let cor_lower = {
        let rank = fixed.p_rank(2) as i64;
        CheckVerdict::new(rank, s - 1, fixed.p_torsion_is_elementary(2) && rank < s)
    };
    let gauss = unit.as_ref().map(|u| {
        let value = s - h0;
        GaussIdentity {
            value,
            norm: u.norm,
            in_range: (1..=2).contains(&value),
            correlation_holds: (value == 1) == (u.norm == -1),
        }
    });

    Ok(QuadraticFieldReport {
        field,
        ramification,
        narrow_invariants: narrow.abstract_group().invariants_u64(),
        class_number,
        dim_cl2,
        dim_h0_cl: cl.dim_h0(),
        dim_h1_cl: cl.dim_h1(),
        unit_h1_dim: units.dim_h1(),
        checks: FieldChecks {
            upper_nf,
            lower_nf,
            gauss_identity: gauss.map(|g| g.verdict()),
            cor_lower,
        },
        class_group: module,
        unit,
        gauss,
    })
}

/// `s0 ≤ 1 + dim Ĥ⁰(C_2, Cl) + dim Ĥ¹(C_2, O*/μ)`.
pub fn check_upper_nf(d: i64) -> Result<CheckVerdict, FieldError> {
    Ok(analyze(d)?.checks.upper_nf)
}

/// `s ≥ 1 + dim Ĥ⁰(C_2, Cl)`.
pub fn check_lower_nf(d: i64) -> Result<CheckVerdict, FieldError> {
    Ok(analyze(d)?.checks.lower_nf)
}

/// `Cl^{C_2}` has elementary 2-torsion of rank at most `s - 1`.
pub fn check_cor_lower_nf(d: i64) -> Result<CheckVerdict, FieldError> {
    Ok(analyze(d)?.checks.cor_lower)
}

pub fn gauss_identity(d: i64) -> Result<GaussIdentity, FieldError> {
    if d < 0 {
        return Err(FieldError::NotReal(d));
    }
    Ok(analyze(d)?
        .gauss
        .expect("real fields have a fundamental unit"))
}

/// Square-free `d` in `[bound, -1]` with trivial class group, from `-1`
/// downwards.
pub fn nine_fields_check(bound: i64) -> Result<Vec<i64>, FieldError> {
    let mut out = Vec::new();
    for d in (bound.min(-1)..=-1).rev() {
        if !is_squarefree(d) {
            continue;
        }
        if class_group_data(d)?.class_number() == 1 {
            out.push(d);
        }
    }
    Ok(out)
}
