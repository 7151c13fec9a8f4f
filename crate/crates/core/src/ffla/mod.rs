//! Exact linear algebra over small finite fields: fields GF(p^m) with
//! table-driven arithmetic, dense matrices, canonical subspaces, and
//! concrete quotient maps.

mod field;
mod matrix;
mod subspace;

pub use field::{Elem, Field};
pub(crate) use matrix::{tokens_with_positions, NumberedLines};
pub use matrix::{unit_vector, Matrix};
pub use subspace::{quotient_map, LinearMap, Subspace};
