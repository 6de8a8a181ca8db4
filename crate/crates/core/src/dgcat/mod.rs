//! Finite dg-categories by structure constants, explicit bimodules, and the
//! catalogue constructors (truncated polynomials, quivers, trivial extensions,
//! opposites, tensor products, gluing).

mod bimodule;
mod category;
mod constructors;

pub use bimodule::{Bimod, BimodMap};
pub use category::{BasisElem, CategoryBuilder, DGCategory, ValidationReport, Violation};
pub use constructors::{
    glue, kronecker, opposite, point, quiver_path_category, square_zero_extension, tensor_cat, trivial_extension, truncated_polynomial,
    zigzag, Arrow, Relation,
};

use crate::exactlinalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DgError {
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("axiom `{axiom}` violated: {witness}")]
    Axiom { axiom: String, witness: String },
    #[error("non-homogeneous relation: {0}")]
    NonHomogeneous(String),
    #[error("hom space not finite within the saturation bound: {0}")]
    InfiniteDimensional(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Linear dual bimodule `R^*` of the diagonal: slot `(x, y)` is `hom(x, y)^*`.
pub fn linear_dual_bimodule(r: &std::sync::Arc<DGCategory>) -> Bimod {
    Bimod::diagonal(r).linear_dual()
}
