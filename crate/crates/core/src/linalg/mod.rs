//! Exact linear algebra: echelon forms, subspaces of K^E and p-adic reduction.

mod matrix;
mod padic;
mod subspace;

pub use matrix::{determinant, determinant_int, left_kernel, nullspace, rank, rref, transpose, Echelon};
pub use padic::{p_reduce, valuation, valuation_int, RationalMatrix};
pub use subspace::{direct_sum_along_partition, Subspace};
