//! Exact binary linear algebra.
//!
//! Vectors are bit-packed into 64-bit words. Matrices are sparse, kept in both
//! row and column compressed form because decoding walks them both ways; rank
//! and row-space queries run Gaussian elimination on a dense bit-packed copy.

mod dense;
mod sparse;
mod vector;

pub use dense::{BitMatrix, RowSpace};
pub use sparse::SparseGf2Matrix;
pub use vector::Gf2Vector;
