//! Smith normal form with both transformation matrices and their inverses.
//!
//! Convention: `U · A · V = S` with `S` diagonal, nonnegative, and
//! `S[i][i] | S[i+1][i+1]`; zero diagonal entries trail. The inverses of
//! `U` and `V` are maintained alongside so that callers can move between
//! the original generators and the Smith basis without a second solve.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LinalgError};

#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub source: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
    rank: usize,
}

impl SmithDecomposition {
    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v_inv(&self) -> &IntMatrix {
        &self.v_inv
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero diagonal entries `d_1 | d_2 | ... | d_rank`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Solves `source · x = b` over the integers, if possible.
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
        let c = self
            .u
            .mul_vec(b)
            .map_err(|_| LinalgError::DimensionMismatch {
                op: "lattice_member",
                left: (self.source.rows(), self.source.cols()),
                right: (b.len(), 1),
            })?;
        let mut y = vec![BigInt::zero(); self.source.cols()];
        for (i, ci) in c.iter().enumerate() {
            if i < self.rank {
                let d = self.s.get(i, i);
                let (q, r) = ci.div_rem(d);
                if !r.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            } else if !ci.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(self.v.mul_vec(&y)?))
    }

    /// A Z-basis of the integer kernel of `source`, as columns.
    pub fn kernel_basis(&self) -> IntMatrix {
        let n = self.source.cols();
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (self.rank..n).collect();
        self.v.select(&rows, &cols)
    }

    /// A Z-basis of the column lattice of `source`, as columns.
    pub fn image_basis(&self) -> IntMatrix {
        // source · V = U⁻¹ · S, whose first `rank` columns are independent.
        (&self.source * &self.v).first_columns(self.rank)
    }
}

/// Computes the Smith normal form of `a`.
///
/// Pivots are chosen by minimal absolute value over the active submatrix,
/// which keeps intermediate coefficients small on the matrices that arise
/// from class groups and C_p-module presentations. Output is deterministic.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let m = a.rows();
    let n = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    let mut rank = 0;
    for k in 0..m.min(n) {
        while let Some((pi, pj)) = min_pivot(&s, k) {
            // move pivot to (k, k)
            s.swap_rows(k, pi);
            u.swap_rows(k, pi);
            u_inv.swap_cols(k, pi);
            s.swap_cols(k, pj);
            v.swap_cols(k, pj);
            v_inv.swap_rows(k, pj);

            let mut dirty = false;
            for i in k + 1..m {
                if s.get(i, k).is_zero() {
                    continue;
                }
                let q = s.get(i, k).div_floor(s.get(k, k));
                let neg_q = -&q;
                s.add_row_multiple(i, k, &neg_q);
                u.add_row_multiple(i, k, &neg_q);
                u_inv.add_col_multiple(k, i, &q);
                dirty |= !s.get(i, k).is_zero();
            }
            for j in k + 1..n {
                if s.get(k, j).is_zero() {
                    continue;
                }
                let q = s.get(k, j).div_floor(s.get(k, k));
                let neg_q = -&q;
                s.add_col_multiple(j, k, &neg_q);
                v.add_col_multiple(j, k, &neg_q);
                v_inv.add_row_multiple(k, j, &q);
                dirty |= !s.get(k, j).is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility on the rest.
            let pivot = s.get(k, k).clone();
            let offender = (k + 1..m).find(|&i| {
                (k + 1..n).any(|j| !s.get(i, j).is_zero() && !s.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                    u_inv.add_col_multiple(i, k, &-one);
                }
                None => break,
            }
        }
        if s.get(k, k).is_zero() {
            break;
        }
        if s.get(k, k).is_negative() {
            s.negate_row(k);
            u.negate_row(k);
            u_inv.negate_col(k);
        }
        rank = k + 1;
    }

    SmithDecomposition {
        u,
        s,
        v,
        source: a.clone(),
        u_inv,
        v_inv,
        rank,
    }
}

fn min_pivot(s: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..s.rows() {
        for j in k..s.cols() {
            let e = s.get(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                let unit = a.is_one();
                best = Some((i, j, a));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Returns `x` with `a · x = b`, or `None` when `b` is outside the column lattice.
pub fn lattice_member(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if a.rows() != b.len() {
        return Err(LinalgError::DimensionMismatch {
            op: "lattice_member",
            left: (a.rows(), a.cols()),
            right: (b.len(), 1),
        });
    }
    snf(a).solve(b)
}
