use std::sync::Arc;

use serde::Serialize;

use crate::dgcat::{linear_dual_bimodule, truncated_polynomial, DGCategory};
use crate::exactlinalg::GradedVectorSpace;
use crate::twisted::{find_quasi_iso, hom_complex, ChainMorphism, HomMatrix, HomSpace, TCBimodule, TwistedComplex};

use super::report::{Check, Report, Status};
use super::SphericalError;

/// Verdict on a candidate spherical or P-object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectReport {
    pub end_dims: GradedVectorSpace,
    /// `(k, t^k ≠ 0 in homology)` for the chosen degree-2 class `t`.
    pub powers: Vec<(usize, bool)>,
    pub report: Report,
}

impl ObjectReport {
    pub fn status(&self) -> Status {
        self.report.status()
    }
}

pub type SphericalObjectReport = ObjectReport;
pub type PObjectReport = ObjectReport;

/// `E ⊗ S_C ≃ E[d]` with `S_C = C^*`, searched by Yoneda from `E[d]`.
fn serre_condition(e: &TwistedComplex, d: i64, seed: u64) -> Check {
    let s = linear_dual_bimodule(e.cat());
    let es = TCBimodule::of_tc(e).tensor_explicit(&s);
    Check::search("Serre condition", &find_quasi_iso(&TCBimodule::of_tc(&e.shift(d)), &es, &[], seed))
}

fn identity_class_check(e: &TwistedComplex) -> Check {
    let sp = HomSpace::new(e, e);
    let id = sp.flatten(&HomMatrix::identity(e.cat(), &e.objs()));
    let ok = hom_complex(e, e).homology().class_of(0, &id).is_some_and(|c| !c.is_empty());
    Check::new("identity is a nonzero class", Status::of(ok), "")
}

/// Conditions of a `d`-spherical object. Perfectness holds for every finite
/// twisted complex. Once `End` has dims `{0: 1, d: 1}` and the unit is a
/// nonzero class, the ring is forced to be `k[t]/t²`.
pub fn check_spherical_object(e: &TwistedComplex, d: i64, seed: u64) -> SphericalObjectReport {
    let end_dims = hom_complex(e, e).homology_dims();
    let want = GradedVectorSpace::from_pairs([(0, 1), (d, 1)]);
    let mut report = Report::default();
    report.push(Check::new("perfect", Status::Pass, format!("{} generators", e.len())));
    report.push(Check::same_dims("End dims", std::slice::from_ref(&end_dims), std::slice::from_ref(&want)));
    report.push(identity_class_check(e));
    report.push(serre_condition(e, d, seed));
    ObjectReport { end_dims, powers: Vec::new(), report }
}

/// The first degree-2 cycle of `End(P)` in the homology basis.
pub fn degree_two_generator(p: &TwistedComplex) -> Option<HomMatrix> {
    let h = hom_complex(p, p).homology();
    h.reps(2).first().map(|z| HomSpace::new(p, p).unflatten(z))
}

fn power_witnesses(p: &TwistedComplex, t: &HomMatrix, n: usize) -> Vec<(usize, bool)> {
    let sp = HomSpace::new(p, p);
    let hom = hom_complex(p, p).homology();
    let objs = p.objs();
    let mut acc = t.clone();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let nonzero = hom.class_of(2 * k as i64, &sp.flatten(&acc)).is_some_and(|c| !c.is_empty());
        out.push((k, nonzero));
        acc = t.compose(&acc, p.cat(), &objs, &objs, &objs);
    }
    out
}

/// Conditions of a `P^n`-object: `End` dims `1` in degrees `0, 2, …, 2n`,
/// the powers `t^k` of a degree-2 generator nonzero for `k ≤ n`, and
/// `P ⊗ S_C ≃ P[2n]`.
pub fn check_p_object(p: &TwistedComplex, n: usize, seed: u64) -> PObjectReport {
    let end_dims = hom_complex(p, p).homology_dims();
    let want = GradedVectorSpace::from_pairs((0..=n as i64).map(|k| (2 * k, 1)));
    let mut report = Report::default();
    report.push(Check::new("perfect", Status::Pass, format!("{} generators", p.len())));
    report.push(Check::same_dims("End dims", std::slice::from_ref(&end_dims), std::slice::from_ref(&want)));
    report.push(identity_class_check(p));
    let powers = match degree_two_generator(p) {
        Some(t) => power_witnesses(p, &t, n),
        None => Vec::new(),
    };
    let ring_ok = powers.len() == n && powers.iter().all(|(_, nz)| *nz);
    report.push(Check::new("powers of t", Status::of(ring_ok), format!("{powers:?}")));
    report.push(serre_condition(p, 2 * n as i64, seed));
    ObjectReport { end_dims, powers, report }
}

/// `k[ε]/ε²` with `deg ε = -1`.
pub fn dual_numbers(field: crate::Field) -> Arc<DGCategory> {
    Arc::new(truncated_polynomial(field, 1, -1).with_name("k[e]/e^2"))
}

/// `P' = {P[-2] →t P}` with `ε` mapping the `P[-1]` generators identically
/// onto the `P` generators.
#[derive(Clone, Debug)]
pub struct PPrime {
    pub bimodule: TCBimodule,
    pub t: HomMatrix,
    /// `t` is null-homotopic, so `P' ≃ P ⊕ P[-1]` with trivial `ε`.
    pub degenerate: bool,
}

pub fn p_prime(p: &TwistedComplex, t: Option<HomMatrix>) -> Result<PPrime, SphericalError> {
    let t = match t {
        Some(t) => t,
        None => degree_two_generator(p).ok_or_else(|| SphericalError::Mismatch("End(P) has no degree-2 homology".into()))?,
    };
    let f = ChainMorphism::new(p.shift(-2), p.clone(), 0, t.clone())?;
    let cone = f.cone()?;
    let sp = HomSpace::new(p, p);
    let degenerate = hom_complex(p, p).homology().class_of(2, &sp.flatten(&t)).is_none_or(|c| c.is_empty());
    let k = p.len();
    let c = p.cat();
    let eps = HomMatrix::from_entries(p.gens().iter().enumerate().map(|(i, g)| ((k + i, i), c.unit(g.obj).clone())));
    let id = HomMatrix::identity(c, &cone.objs());
    let ke = dual_numbers(p.field());
    let bimodule = TCBimodule::new(ke, c.clone(), vec![cone], |_, _, f| if f == 0 { id.clone() } else { eps.clone() })?;
    Ok(PPrime { bimodule, t, degenerate })
}

/// Certifies `C_{P'} ≃ k[ε][-2n-2]`.
pub fn p_prime_cotwist_check(pp: &TCBimodule, n: usize, seed: u64) -> Check {
    let c = super::cotwist_bimodule(pp);
    let diag = TCBimodule::diagonal(pp.left()).shift(-2 * n as i64 - 2);
    Check::search("cotwist ~ diagonal[-2n-2]", &super::certify_either_way(&diag, &c, seed))
}
