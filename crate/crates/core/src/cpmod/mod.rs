//! C_p-modules: a finitely generated abelian group with the action of a
//! chosen generator τ of the cyclic group of prime order p.

mod dual;
mod spec;
mod tate;

pub use spec::{ModuleSpec, SpecError};
pub use tate::{classify_free, herbrand_check, tate, TateCohomology, TypeMultiplicities};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::arith::is_prime;
use crate::intlinalg::{cokernel, induced_subquotient, FgAbGroup, IntMatrix, LinalgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CpModuleError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("tau must be {expected}x{expected}, got {rows}x{cols}")]
    TauShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("TauDoesNotDescend: tau maps relation column {column} outside the relation lattice")]
    TauDoesNotDescend { column: usize },
    #[error("TauNotInvertible: tau is not surjective on the group")]
    TauNotInvertible,
    #[error("TauOrderNotDividingP: column {column} of tau^p - 1 is nonzero in the group")]
    TauOrderNotDividingP { column: usize },
    #[error("ModuleNotFinite: the underlying group has free rank {0}")]
    ModuleNotFinite(usize),
    #[error("ModuleNotTorsionFree: the underlying group has torsion {0}")]
    ModuleNotTorsionFree(String),
    #[error("InconsistentRank: rank {rank} with t = {t}, a = {a} is not f*p + t + a*(p-1)")]
    InconsistentRank { rank: usize, t: usize, a: usize },
    #[error("PrimeMismatch: cannot combine modules over C_{0} and C_{1}")]
    PrimeMismatch(u64, u64),
    #[error("cohomology group {0} is not an elementary abelian p-group")]
    NotAnnihilatedByP(String),
    #[error("basis change is not unimodular")]
    NotUnimodular,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A finitely generated abelian group with an automorphism `tau` whose
/// order divides the prime `p`.
///
/// `tau` acts on the generators of the presentation: column `j` is the
/// image of generator `j`. Construction validates that `tau` descends to the
/// quotient, is invertible there, and satisfies `tau^p = 1`.
#[derive(Clone, Debug)]
pub struct CpModule {
    p: u64,
    group: FgAbGroup,
    tau: IntMatrix,
}

impl CpModule {
    pub fn new(p: u64, relations: IntMatrix, tau: IntMatrix) -> Result<Self, CpModuleError> {
        if !is_prime(p) {
            return Err(CpModuleError::NotPrime(p));
        }
        let m = relations.rows();
        if tau.rows() != m || tau.cols() != m {
            return Err(CpModuleError::TauShape {
                expected: m,
                rows: tau.rows(),
                cols: tau.cols(),
            });
        }
        let group = FgAbGroup::from_relations(relations);

        let image = &tau * group.relations();
        for (column, col) in image.columns().enumerate() {
            if !group.contains_zero(&col)? {
                return Err(CpModuleError::TauDoesNotDescend { column });
            }
        }
        // Surjective endomorphisms of finitely generated abelian groups are
        // injective, so surjectivity is the whole invertibility test.
        if !cokernel(&tau.hstack(group.relations())?).is_trivial() {
            return Err(CpModuleError::TauNotInvertible);
        }
        let excess = &tau.pow(p as u32) - &IntMatrix::identity(m);
        for (column, col) in excess.columns().enumerate() {
            if !group.contains_zero(&col)? {
                return Err(CpModuleError::TauOrderNotDividingP { column });
            }
        }
        Ok(Self { p, group, tau })
    }

    /// `Z^rank` with trivial action.
    pub fn trivial(p: u64, rank: usize) -> Result<Self, CpModuleError> {
        Self::new(p, IntMatrix::zeros(rank, 0), IntMatrix::identity(rank))
    }

    /// `Z/q` with trivial action.
    pub fn trivial_cyclic(p: u64, q: u64) -> Result<Self, CpModuleError> {
        Self::new(p, IntMatrix::diagonal(&[q]), IntMatrix::identity(1))
    }

    /// The regular representation `Z[C_p]`: τ cyclically permutes a basis.
    pub fn regular(p: u64) -> Result<Self, CpModuleError> {
        let n = p as usize;
        Self::new(p, IntMatrix::zeros(n, 0), cyclic_permutation(n))
    }

    /// `Z[C_p] / (q)`, the regular representation over `Z/q`.
    pub fn regular_mod(p: u64, q: u64) -> Result<Self, CpModuleError> {
        let n = p as usize;
        Self::new(p, IntMatrix::scalar(n, q), cyclic_permutation(n))
    }

    /// The augmentation ideal, `Z[ξ]/(1 + ξ + ... + ξ^{p-1})` with τ acting
    /// by multiplication by ξ. For `p = 2` this is `Z` with τ = -1.
    pub fn augmentation_ideal(p: u64) -> Result<Self, CpModuleError> {
        let n = p as usize - 1;
        Self::new(p, IntMatrix::zeros(n, 0), cyclotomic_companion(p))
    }

    /// `Z ⊕ Z/p` with τ(x, y) = (x, x + y): an extension of trivial `Z` by
    /// trivial `Z/p` that does not split as a C_p-module.
    pub fn nonsplit_extension(p: u64) -> Result<Self, CpModuleError> {
        Self::new(
            p,
            IntMatrix::from_i64(&[&[0], &[p as i64]]),
            IntMatrix::from_i64(&[&[1, 0], &[1, 1]]),
        )
    }

    /// Builds a module whose validity is guaranteed by construction.
    pub(crate) fn from_parts(p: u64, group: FgAbGroup, tau: IntMatrix) -> Self {
        debug_assert_eq!(tau.rows(), group.ambient_rank());
        Self { p, group, tau }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn tau(&self) -> &IntMatrix {
        &self.tau
    }

    pub fn relations(&self) -> &IntMatrix {
        self.group.relations()
    }

    pub fn ambient_rank(&self) -> usize {
        self.group.ambient_rank()
    }

    /// `τ - 1`
    pub fn augmentation_operator(&self) -> IntMatrix {
        &self.tau - &IntMatrix::identity(self.ambient_rank())
    }

    /// `N = 1 + τ + ... + τ^{p-1}`
    pub fn norm_operator(&self) -> IntMatrix {
        let m = self.ambient_rank();
        let mut acc = IntMatrix::zeros(m, m);
        let mut power = IntMatrix::identity(m);
        for _ in 0..self.p {
            acc = &acc + &power;
            power = &power * &self.tau;
        }
        acc
    }

    /// The module with τ replaced by τ^k; a different generator of the same
    /// group when `gcd(k, p) = 1`.
    pub fn with_generator_power(&self, k: u32) -> Result<Self, CpModuleError> {
        Self::new(self.p, self.relations().clone(), self.tau.pow(k))
    }

    /// Re-presents the module on new generators `x' = P x`. `inverse` must be
    /// the exact inverse of `forward`.
    pub fn change_basis(
        &self,
        forward: &IntMatrix,
        inverse: &IntMatrix,
    ) -> Result<Self, CpModuleError> {
        if !forward.is_square()
            || forward.rows() != self.ambient_rank()
            || !(forward.checked_mul(inverse)?).is_identity()
        {
            return Err(CpModuleError::NotUnimodular);
        }
        let relations = forward * self.relations();
        let tau = &(forward * &self.tau) * inverse;
        Self::new(self.p, relations, tau)
    }

    /// The C_p-fixed subgroup `Ker(τ - 1)`.
    pub fn fixed_points(&self) -> FgAbGroup {
        let zero = IntMatrix::zeros(self.ambient_rank(), self.ambient_rank());
        induced_subquotient(&self.group, &self.augmentation_operator(), &zero)
            .expect("τ - 1 descends for a validated module")
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, CpModuleError> {
        if self.p != other.p {
            return Err(CpModuleError::PrimeMismatch(self.p, other.p));
        }
        let relations = self.relations().block_diag(other.relations());
        let tau = self.tau.block_diag(&other.tau);
        Ok(Self::from_parts(
            self.p,
            FgAbGroup::from_relations(relations),
            tau,
        ))
    }

    /// The torsion submodule with the restricted action, presented as
    /// `⊕ Z/d_i` in the Smith basis of the group.
    pub fn torsion_submodule(&self) -> Self {
        let (tor, _, tau) = self.smith_blocks();
        let d: Vec<BigInt> = tor
            .iter()
            .map(|&i| self.group.smith().s.get(i, i).clone())
            .collect();
        let tau_t = tau.select(&tor, &tor);
        Self::from_parts(
            self.p,
            FgAbGroup::from_relations(IntMatrix::diagonal(&d)),
            tau_t,
        )
    }

    /// The torsion-free quotient `M / M_tor` with the induced action.
    pub fn free_quotient(&self) -> Self {
        let (_, free, tau) = self.smith_blocks();
        let tau_f = tau.select(&free, &free);
        Self::from_parts(self.p, FgAbGroup::free(free.len()), tau_f)
    }

    /// Index sets of torsion and free Smith coordinates and τ in the Smith basis.
    fn smith_blocks(&self) -> (Vec<usize>, Vec<usize>, IntMatrix) {
        let smith = self.group.smith();
        let tau = &(&smith.u * &self.tau) * smith.u_inv();
        let tor: Vec<usize> = (0..smith.rank())
            .filter(|&i| !smith.s.get(i, i).is_one())
            .collect();
        let free: Vec<usize> = (smith.rank()..self.ambient_rank()).collect();
        debug_assert!(tau.select(&free, &tor).is_zero());
        (tor, free, tau)
    }
}

fn cyclic_permutation(n: usize) -> IntMatrix {
    let mut t = IntMatrix::zeros(n, n);
    for j in 0..n {
        t.set((j + 1) % n, j, BigInt::one());
    }
    t
}

/// Companion matrix of `1 + x + ... + x^{p-1}` acting on `1, ξ, ..., ξ^{p-2}`.
fn cyclotomic_companion(p: u64) -> IntMatrix {
    let n = p as usize - 1;
    let mut t = IntMatrix::zeros(n, n);
    for j in 0..n {
        if j + 1 < n {
            t.set(j + 1, j, BigInt::one());
        } else {
            for i in 0..n {
                t.set(i, j, BigInt::from(-1));
            }
        }
    }
    t
}
