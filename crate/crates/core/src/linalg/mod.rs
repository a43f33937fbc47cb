//! Exact rational matrices, polynomial matrices and error-tracked complex
//! scalars.

mod approx;
mod matrix;
mod poly;
mod scalar;

pub use approx::ApproxComplex;
pub use matrix::Matrix;
pub use poly::{
    constant_poly_matrix, one_parameter_family, poly_degree, poly_eval, PolyMatrix, Polynomial,
};
pub use scalar::{rat, Rational, Ring, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("bad shape {rows}x{cols} for {len} entries")]
    BadShape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("series did not terminate after {0} terms")]
    NotNilpotent(usize),
}
