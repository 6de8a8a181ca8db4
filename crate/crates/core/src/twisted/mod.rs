//! One-sided twisted complexes of shifted representables: the finite
//! semifree models on which every derived tensor and hom is computed.

mod bimodule;
mod complex;
mod matrix;
mod search;
mod semifree;
mod trace;

pub use bimodule::{hom_bimodule, TCBimodule, TcMap};
pub use complex::{hom_complex, ChainMorphism, HomSpace, Homotopy, TwistedComplex};
pub use matrix::{Gen, HomMatrix};
pub use search::{
    attempt_budget, closed_combinations, closed_span, elementary_maps, find_explicit_quasi_iso, find_quasi_iso, find_tc_quasi_iso,
    hom_to_explicit, tc_map_values, values_to_tc_map, with_attempt_budget, yoneda_closed_maps, yoneda_map, Certificate, QisoSearch,
    YonedaSpace, DEFAULT_ATTEMPTS,
};
pub use semifree::{recognize_semifree, SemifreeModel};
pub use trace::{
    coaction, cotwist_bimodule, dual_explicit, evaluation, evaluation_map, trace, trace_bimodule, twist_bimodule, Coaction, Evaluation,
    Sigma, ZigZag,
};

use crate::dgcat::DgError;
use crate::exactlinalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TwistedError {
    #[error("wrong degree: {0}")]
    Degree(String),
    #[error("not closed: {0}")]
    NotClosed(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("not semifree: {0}")]
    NotSemifree(String),
    #[error(transparent)]
    Dg(#[from] DgError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
