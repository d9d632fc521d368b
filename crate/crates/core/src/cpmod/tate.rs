use serde::{Deserialize, Serialize};

use super::{CpModule, CpModuleError};
use crate::intlinalg::{induced_subquotient, FgAbGroup};

/// Tate cohomology of C_p: `Ĥ⁰ = Ker S / Im N` and `Ĥ¹ = Ker N / Im S`,
/// with `S = τ - 1` and `N = 1 + τ + ... + τ^{p-1}`.
///
/// Even positive degrees agree with `Ĥ⁰` and odd ones with `Ĥ¹`.
#[derive(Clone, Debug)]
pub struct TateCohomology {
    pub h0: FgAbGroup,
    pub h1: FgAbGroup,
}

impl TateCohomology {
    pub fn dim_h0(&self) -> usize {
        self.h0.invariant_factors().len()
    }

    pub fn dim_h1(&self) -> usize {
        self.h1.invariant_factors().len()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_h0(), self.dim_h1())
    }
}

pub fn tate(m: &CpModule) -> Result<TateCohomology, CpModuleError> {
    let s = m.augmentation_operator();
    let n = m.norm_operator();
    let h0 = induced_subquotient(m.group(), &s, &n)?;
    let h1 = induced_subquotient(m.group(), &n, &s)?;
    for (name, h) in [("H^0", &h0), ("H^1", &h1)] {
        if !h.is_elementary_abelian(m.p()) {
            return Err(CpModuleError::NotAnnihilatedByP(format!("{name} = {h}")));
        }
    }
    Ok(TateCohomology { h0, h1 })
}

/// For a finite module, `dim Ĥ⁰ = dim Ĥ¹` (the Herbrand quotient is 1).
pub fn herbrand_check(m: &CpModule) -> Result<bool, CpModuleError> {
    if !m.group().is_finite() {
        return Err(CpModuleError::ModuleNotFinite(m.group().free_rank()));
    }
    let t = tate(m)?;
    Ok(t.dim_h0() == t.dim_h1())
}

/// Multiplicities of the three indecomposable torsion-free types after
/// localization at `(p)`: free `Z[C_p]`, trivial `Z`, augmentation ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeMultiplicities {
    pub f: usize,
    pub t: usize,
    pub a: usize,
}

impl TypeMultiplicities {
    pub fn rank(&self, p: u64) -> usize {
        self.f * p as usize + self.t + self.a * (p as usize - 1)
    }
}

/// Reads the Z_(p)-type multiplicities of a torsion-free module from its
/// Tate cohomology: each trivial summand contributes to `Ĥ⁰`, each
/// augmentation-ideal summand to `Ĥ¹`, and free summands to neither.
pub fn classify_free(m: &CpModule) -> Result<TypeMultiplicities, CpModuleError> {
    if !m.group().is_torsion_free() {
        return Err(CpModuleError::ModuleNotTorsionFree(m.group().to_string()));
    }
    let rank = m.group().free_rank();
    let cohomology = tate(m)?;
    let (t, a) = cohomology.dims();
    let p = m.p() as usize;
    let rest = rank
        .checked_sub(t + a * (p - 1))
        .ok_or(CpModuleError::InconsistentRank { rank, t, a })?;
    if rest % p != 0 {
        return Err(CpModuleError::InconsistentRank { rank, t, a });
    }
    Ok(TypeMultiplicities { f: rest / p, t, a })
}
