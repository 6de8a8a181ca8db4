//! Exact finite dg-categories, one-sided twisted complexes, gluing along a
//! bimodule, and machine checks for spherical twists and cotwists.
//!
//! Everything is computed over an exact field (ℚ or F_p). Modules are
//! semifree twisted complexes, so plain tensor products and hom complexes
//! already compute their derived versions.

pub mod dgcat;
pub mod exactlinalg;
pub mod glued;
pub mod spherical;
pub mod twisted;

pub use exactlinalg::{Field, FiniteComplex, GradedVectorSpace, LinMap, Matrix, Scalar};
