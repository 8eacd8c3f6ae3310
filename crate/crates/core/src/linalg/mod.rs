//! Exact linear algebra over prime fields.

mod field;
mod matrix;
pub mod sparse;
mod subspace;

pub use field::{is_prime, Field};
pub use matrix::Matrix;
pub use sparse::{SparseEchelon, SparseMatrix, SparseVec};
pub use subspace::{preimage, Subspace};
