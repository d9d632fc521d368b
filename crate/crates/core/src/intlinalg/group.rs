use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{snf, IntMatrix, LinalgError, SmithDecomposition};

/// A finitely generated abelian group `Z^m / L`, where `L` is the lattice
/// spanned by the columns of `relations`.
///
/// The invariant factors and free rank are read off the Smith form at
/// construction; unit factors are dropped so two presentations of the same
/// group compare equal through [`FgAbGroup::is_isomorphic`].
#[derive(Clone)]
pub struct FgAbGroup {
    relations: IntMatrix,
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    smith: SmithDecomposition,
}

impl FgAbGroup {
    pub fn from_relations(relations: IntMatrix) -> Self {
        let smith = snf(&relations);
        let invariant_factors = smith
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        let free_rank = relations.rows() - smith.rank();
        Self {
            relations,
            invariant_factors,
            free_rank,
            smith,
        }
    }

    pub fn free(rank: usize) -> Self {
        Self::from_relations(IntMatrix::zeros(rank, 0))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/n_1 ⊕ ... ⊕ Z/n_k ⊕ Z^free`, presented on `k + free` generators.
    pub fn from_invariants<T: Into<BigInt> + Clone>(orders: &[T], free: usize) -> Self {
        let k = orders.len();
        let mut r = IntMatrix::zeros(k + free, k);
        for (i, n) in orders.iter().enumerate() {
            r.set(i, i, n.clone().into());
        }
        Self::from_relations(r)
    }

    pub fn ambient_rank(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.smith
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_finite() && self.is_torsion_free()
    }

    /// Group order, or `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// Number of invariant factors divisible by `p`, i.e. `dim (G/pG) ⊗ F_p`
    /// restricted to the torsion part.
    pub fn p_rank(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.invariant_factors
            .iter()
            .filter(|d| d.is_multiple_of(&p))
            .count()
    }

    /// True when the p-primary part of the torsion is killed by `p`.
    pub fn p_torsion_is_elementary(&self, p: u64) -> bool {
        let p2 = BigInt::from(p * p);
        !self.invariant_factors.iter().any(|d| d.is_multiple_of(&p2))
    }

    /// True when every invariant factor equals `p` and the group is finite.
    pub fn is_elementary_abelian(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.is_finite() && self.invariant_factors.iter().all(|d| *d == p)
    }

    pub fn invariants_u64(&self) -> Vec<u64> {
        self.invariant_factors
            .iter()
            .map(|d| d.to_u64().expect("invariant factor exceeds u64"))
            .collect()
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors == other.invariant_factors
    }

    /// Whether the integer vector `x` represents the identity element.
    pub fn contains_zero(&self, x: &[BigInt]) -> Result<bool, LinalgError> {
        Ok(self.smith.solve(x)?.is_some())
    }

    /// Whether the square matrix `phi` maps the relation lattice into itself.
    pub fn descends(&self, phi: &IntMatrix) -> Result<bool, LinalgError> {
        let image = phi.checked_mul(&self.relations)?;
        self.columns_vanish(&image)
    }

    /// Whether every column of `a` is zero in the group.
    pub fn columns_vanish(&self, a: &IntMatrix) -> Result<bool, LinalgError> {
        for col in a.columns() {
            if !self.contains_zero(&col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates of `x` in the Smith basis: entry `i` is taken modulo the
    /// `i`-th diagonal entry (or kept as an integer on free coordinates).
    pub fn smith_coordinates(&self, x: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        let mut y = self.smith.u.mul_vec(x)?;
        for (i, yi) in y.iter_mut().enumerate().take(self.smith.rank()) {
            *yi = yi.mod_floor(self.smith.s.get(i, i));
        }
        Ok(y)
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({self})")
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The group `Z^rows / (column lattice of r)`.
pub fn cokernel(r: &IntMatrix) -> FgAbGroup {
    FgAbGroup::from_relations(r.clone())
}

/// Computes `Ker φ / Im ψ` for endomorphisms `φ = ker_of`, `ψ = im_of` of
/// `g`, both given as `m × m` matrices on the generators.
///
/// The numerator is `{x ∈ Z^m : φx ∈ L}` and the denominator is
/// `Im ψ + L`, where `L` is the relation lattice of `g`.
pub fn induced_subquotient(
    g: &FgAbGroup,
    ker_of: &IntMatrix,
    im_of: &IntMatrix,
) -> Result<FgAbGroup, LinalgError> {
    let m = g.ambient_rank();
    for (name, a) in [("ker_of", ker_of), ("im_of", im_of)] {
        if a.rows() != m || a.cols() != m {
            return Err(LinalgError::DimensionMismatch {
                op: name,
                left: (m, m),
                right: (a.rows(), a.cols()),
            });
        }
        if !g.descends(a)? {
            return Err(LinalgError::DoesNotDescend(name));
        }
    }
    if !g.columns_vanish(&(ker_of * im_of))? {
        return Err(LinalgError::ImageNotInKernel);
    }

    let r = g.relations();
    // preimage of L under φ: project ker [φ | R] onto the first m coordinates
    let stacked = ker_of.hstack(r)?;
    let kernel = snf(&stacked).kernel_basis();
    let numerator = snf(&kernel.first_rows(m)).image_basis();

    let denominator = im_of.hstack(r)?;
    let basis = snf(&numerator);
    let mut coords = Vec::with_capacity(denominator.cols());
    for col in denominator.columns() {
        match basis.solve(&col)? {
            Some(x) => coords.push(x),
            // Im ψ ⊆ Ker φ was verified above, so this is unreachable for
            // consistent input.
            None => return Err(LinalgError::ImageNotInKernel),
        }
    }
    let rel = IntMatrix::from_columns(numerator.cols(), &coords)?;
    Ok(cokernel(&rel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cokernel_examples() {
        let g = cokernel(&IntMatrix::from_i64(&[&[5]]));
        assert_eq!(g.invariant_factors(), big(&[5]).as_slice());
        assert_eq!(g.free_rank(), 0);

        let g = cokernel(&IntMatrix::zeros(2, 0));
        assert_eq!(g.free_rank(), 2);
        assert!(g.invariant_factors().is_empty());

        let g = cokernel(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(g.invariant_factors(), big(&[2, 4]).as_slice());
        assert_eq!(g.order(), Some(BigInt::from(8)));
    }

    #[test]
    fn unit_factors_are_dropped() {
        let g = cokernel(&IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
        assert_eq!(g.invariant_factors(), big(&[6]).as_slice());
        let h = FgAbGroup::from_invariants(&[2i64, 3], 0);
        assert!(g.is_isomorphic(&h));
        assert_eq!(g.to_string(), "Z/6");
    }

    #[test]
    fn subquotient_examples() {
        let z2 = FgAbGroup::free(2);
        let zero = IntMatrix::zeros(2, 2);
        let q = induced_subquotient(&z2, &zero, &zero).unwrap();
        assert!(q.is_isomorphic(&z2));

        let z = FgAbGroup::free(1);
        let p = IntMatrix::scalar(1, 7);
        let zero = IntMatrix::zeros(1, 1);
        assert!(induced_subquotient(&z, &p, &zero).unwrap().is_trivial());
        let q = induced_subquotient(&z, &zero, &p).unwrap();
        assert_eq!(q.invariant_factors(), big(&[7]).as_slice());
    }

    #[test]
    fn subquotient_rejects_bad_maps() {
        let g = FgAbGroup::from_invariants(&[4i64], 0);
        // e1 -> e1 + e2 sends the relation 4e1 to 4e1 + 4e2 ≠ 0 in Z/4 ⊕ Z
        let g2 = FgAbGroup::from_invariants(&[4i64], 1);
        let phi = IntMatrix::from_i64(&[&[1, 0], &[1, 1]]);
        assert!(matches!(
            induced_subquotient(&g2, &phi, &IntMatrix::zeros(2, 2)),
            Err(LinalgError::DoesNotDescend("ker_of"))
        ));
        let id = IntMatrix::identity(1);
        assert!(matches!(
            induced_subquotient(&g, &id, &id),
            Err(LinalgError::ImageNotInKernel)
        ));
    }

    #[test]
    fn kernel_of_doubling_on_z4() {
        // Ker(2) on Z/4 is Z/2, Im(2) on Z/4 is Z/2: Ker 2 / Im 2 = 0
        let g = FgAbGroup::from_invariants(&[4i64], 0);
        let two = IntMatrix::scalar(1, 2);
        let k = induced_subquotient(&g, &two, &IntMatrix::zeros(1, 1)).unwrap();
        assert_eq!(k.invariant_factors(), big(&[2]).as_slice());
        assert!(induced_subquotient(&g, &two, &two).unwrap().is_trivial());
    }
}
