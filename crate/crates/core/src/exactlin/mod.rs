//! Exact integer linear algebra: dense matrices, Smith normal form, solvers and kernels.

mod matrix;
mod snf;
mod solve;

pub use matrix::{Int, IntMatrix};
pub use snf::{invariant_factors, snf, SnfDecomposition};
pub use solve::{in_column_span, kernel_basis, solve_int_linear, Solver};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("modulus must be positive, got {0}")]
    BadModulus(Int),
}
