//! Modules over a glued category `R = B ⊔_φ A` in triangular form
//! `(F_A, F_B, ρ: F_A ⊗_A φ → F_B)`, the induction and restriction functors,
//! both semiorthogonal decompositions, and semifree models over `R`.

mod context;
mod sod;
mod triangular;

pub use context::{kronecker_context, GluedCategoryContext};
pub use sod::{check_adjunctions, check_gluing_hom_identities, hom_r, sod_project, DimCheck, HomIdentityReport, SodProjection};
pub(crate) use triangular::unit_at;
pub use triangular::{ind_a, ind_b, res_proj_a, triangular_to_semifree, TriangularModel, TriangularModule};

use crate::dgcat::DgError;
use crate::twisted::TwistedError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GluedError {
    #[error(transparent)]
    Twisted(#[from] TwistedError),
    #[error(transparent)]
    Dg(#[from] DgError),
    #[error("certificate failed: {0}")]
    Certificate(String),
}
