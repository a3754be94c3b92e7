//! Exact linear algebra over the rationals.

pub mod dense;
pub mod nullspace;
pub mod sparse;

pub use nullspace::{nullspace, rank, rank_of_rows, span_contains};
pub use sparse::SparseMat;
