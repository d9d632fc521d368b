//! Tate cohomology of cyclic group actions on finitely generated abelian
//! groups, with checkers for ramification-count inequalities on quadratic
//! fields, cyclic cubic data, and explicit 3-manifold examples.

pub mod arith;
pub mod cli;
pub mod cpmod;
pub mod intlinalg;
pub mod mfld;
pub mod numfield;
