//! Spherical objects and functors: the glued spherical datum, its twist and
//! cotwist computed two ways each, Serre duality, and the certificate
//! reports that tie them together.

mod catalogue;
mod certificates;
mod cotwist;
mod datum;
mod objects;
mod report;
mod twist;

pub use crate::twisted::{cotwist_bimodule, twist_bimodule, Sigma as SigmaMap};
pub use catalogue::{all_pairs, kt2, kt2_pair, p_object, p_prime_pair, zero_pair, zigzag_pair, Pair};
pub use certificates::{certify_either_way, certify_inverse, model_over_glued, spherical_certificates, CotwistKind};
pub use cotwist::{
    check_serre_duality, cotwist_matrix, cotwist_matrix_bimodule, p_prime_serre_table, serre_pairing_candidates, serre_shift_check,
    serre_shift_of, serre_shift_table, CotwistMatrix, SerreShift,
};
pub use datum::{glue_spherical, GluedSphericalDatum};
pub use objects::{
    check_p_object, check_spherical_object, degree_two_generator, dual_numbers, p_prime, p_prime_cotwist_check, ObjectReport,
    PObjectReport, PPrime, SphericalObjectReport,
};
pub use report::{Check, HomologyRow, Report, Status};
pub use twist::{
    convolution_twist, degenerate_gluing_check, first_principles_twist, glued_trace, glued_twist, homology_on_representables,
    iterated_twist, verify_commutativity, GluedTwist,
};

use crate::dgcat::DgError;
use crate::glued::GluedError;
use crate::twisted::TwistedError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SphericalError {
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Twisted(#[from] TwistedError),
    #[error(transparent)]
    Glued(#[from] GluedError),
    #[error(transparent)]
    Dg(#[from] DgError),
}
