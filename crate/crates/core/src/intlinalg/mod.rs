//! Exact integer linear algebra: Smith normal form, lattice membership, and
//! subquotients of finitely generated abelian groups.

mod group;
mod matrix;
mod snf;

pub use group::{cokernel, induced_subquotient, FgAbGroup};
pub use matrix::IntMatrix;
pub use snf::{lattice_member, snf, SmithDecomposition};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix of shape {rows}x{cols} needs {} entries, got {got}", rows * cols)]
    EntryCount {
        rows: usize,
        cols: usize,
        got: usize,
    },
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{0} does not descend to the quotient group")]
    DoesNotDescend(&'static str),
    #[error("image of the second map is not contained in the kernel of the first")]
    ImageNotInKernel,
}
