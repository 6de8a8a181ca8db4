//! Exact linear algebra: scalars, sparse and dense matrices, complexes and homology.

mod complex;
mod matrix;
mod scalar;
pub mod sparse;

pub use complex::{FiniteComplex, GradedVectorSpace, Homology};
pub use matrix::{kernel_basis, rank, solve, Matrix};
pub use scalar::{Field, Rat, Scalar};
pub use sparse::{Echelon, LinMap, SVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("{0} is not a supported prime (need 2 <= p < 2^31)")]
    BadPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("d² ≠ 0 in degree {degree}: {witness}")]
    NotAComplex { degree: i64, witness: String },
    #[error("map does not commute with the differentials")]
    NotAChainMap,
}
