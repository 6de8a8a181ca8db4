use std::sync::Arc;

use crate::dgcat::{linear_dual_bimodule, Bimod, BimodMap, DGCategory};
use crate::glued::{triangular_to_semifree, GluedCategoryContext, TriangularModule};
use crate::twisted::{find_explicit_quasi_iso, find_quasi_iso, hom_bimodule, QisoSearch, TCBimodule};

use super::cotwist::{cotwist_matrix_bimodule, serre_shift_check};
use super::datum::GluedSphericalDatum;
use super::report::{Check, Report};
use super::twist::first_principles_twist;
use super::SphericalError;

/// What is known about the cotwist of the constituents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CotwistKind {
    /// All constituents are `d`-spherical over a finite-dimensional `C`.
    Serre {
        d: i64,
    },
    /// Each constituent's cotwist is the diagonal shifted by `shift`.
    Shift {
        shift: i64,
    },
    Unknown,
}

/// `X ≃ Y` for a twisted `X` and an explicit `Y`: a Yoneda search from `X`,
/// then an explicit search from `Y` to the expansion of `X`. The strict
/// diagonal has few maps out of it, so the second direction matters.
pub fn certify_either_way(x: &TCBimodule, y: &Bimod, seed: u64) -> QisoSearch<BimodMap> {
    let s = find_quasi_iso(x, y, &[], seed);
    if s.is_found() {
        return s;
    }
    find_explicit_quasi_iso(y, &x.expand(), &[], None, seed)
}

/// `X ⊗ X^∨ ≃ C` for the `C`-dual `X^∨ = Hom(X, C)`: the unit of
/// `- ⊗ X ⊣ - ⊗ X^∨` is invertible, so `X^∨` is a one-sided inverse.
pub fn certify_inverse(x: &TCBimodule, seed: u64) -> QisoSearch<BimodMap> {
    let c = x.right();
    let inv = hom_bimodule(x, &TCBimodule::diagonal(c));
    certify_either_way(&TCBimodule::diagonal(c), &x.tensor_explicit(&inv), seed)
}

/// A semifree model over `R` of an explicit `R`-`R` bimodule, via its
/// triangular form.
pub fn model_over_glued(ctx: &GluedCategoryContext, x: &Bimod) -> Result<TCBimodule, SphericalError> {
    let (t, _) = TriangularModule::from_explicit(ctx, x)?;
    Ok(triangular_to_semifree(ctx, &t)?.tc)
}

fn shifted_diagonal(cat: &Arc<DGCategory>, shift: i64) -> TCBimodule {
    TCBimodule::diagonal(cat).shift(shift)
}

/// Two of the four conditions for the glued functor: the twist has the
/// `C`-dual as an inverse, and the cotwist is invertible. In the Serre case
/// the latter reduces to `C_P ≃ R^*[-1-d]` plus invertibility of `R^*`.
pub fn spherical_certificates(datum: &GluedSphericalDatum, kind: CotwistKind, seed: u64) -> Result<Report, SphericalError> {
    let mut report = Report::default();
    let t = first_principles_twist(datum)?;
    report.push(Check::search("twist (x) dual ~ diagonal", &certify_inverse(&t, seed)));
    let ctx = &datum.ctx;
    match kind {
        CotwistKind::Serre { d } => {
            report.extend("serre", serre_shift_check(datum, d, seed).report);
            let rs = model_over_glued(ctx, &linear_dual_bimodule(&ctx.r))?;
            report.push(Check::search("R* (x) dual ~ diagonal", &certify_inverse(&rs, seed)));
        }
        CotwistKind::Shift { shift } => {
            for (name, m) in [("M", &datum.m), ("N", &datum.n)] {
                let c = super::cotwist_bimodule(m);
                let s = certify_either_way(&shifted_diagonal(m.left(), shift), &c, seed);
                report.push(Check::search(&format!("C_{name} ~ diagonal[{shift}]"), &s));
            }
            let cm = model_over_glued(ctx, &cotwist_matrix_bimodule(datum))?;
            report.push(Check::search("cotwist (x) dual ~ diagonal", &certify_inverse(&cm, seed)));
        }
        CotwistKind::Unknown => {
            let cm = model_over_glued(ctx, &cotwist_matrix_bimodule(datum))?;
            report.push(Check::search("cotwist (x) dual ~ diagonal", &certify_inverse(&cm, seed)));
        }
    }
    Ok(report)
}
