use std::sync::Arc;

use crate::dgcat::{linear_dual_bimodule, Bimod, BimodMap, DGCategory};
use crate::exactlinalg::{FiniteComplex, LinMap, SVec};
use crate::glued::GluedCategoryContext;
use crate::twisted::{closed_span, cotwist_bimodule, find_explicit_quasi_iso, hom_bimodule, hom_complex, HomSpace, QisoSearch, TCBimodule};

use super::datum::GluedSphericalDatum;
use super::report::{Check, Report, Status};

/// The cotwist of the glued functor, computed from its definition and as
/// the lower-triangular matrix `[[C_M, 0], [Hom_C(M, N)[-1], C_N]]`.
#[derive(Clone, Debug)]
pub struct CotwistMatrix {
    /// `cone(R → P ⊗_C P^∨)[-1]`.
    pub first_principles: Bimod,
    pub matrix: Bimod,
    pub comparison: QisoSearch<BimodMap>,
    pub report: Report,
}

/// The matrix form. Within blocks it is `C_M`, `C_N` and `Hom_C(M, N)[-1]`;
/// across blocks `x ∈ φ` acts on the off-diagonal entry by composition
/// followed by `σ`, the inclusion into the second cone component.
pub fn cotwist_matrix_bimodule(datum: &GluedSphericalDatum) -> Bimod {
    let (m, n, ctx) = (&datum.m, &datum.n, &datum.ctx);
    let cm = cotwist_bimodule(m);
    let cn = cotwist_bimodule(n);
    let h = hom_bimodule(m, n).shift(-1);
    let r = &ctx.r;
    let fld = r.field();
    let nb = ctx.nb();
    let nr = r.n_objects();
    let (a, b) = (&ctx.a, &ctx.b);
    let mut slots = Vec::with_capacity(nr * nr);
    for x in 0..nr {
        for y in 0..nr {
            slots.push(match (x < nb, y < nb) {
                (false, false) => cm.slot(x - nb, y - nb).clone(),
                (true, true) => cn.slot(x, y).clone(),
                (true, false) => h.slot(x, y - nb).clone(),
                (false, true) => FiniteComplex::zero(fld),
            });
        }
    }
    let zero = |s: &FiniteComplex, t: &FiniteComplex| LinMap::zero(fld, t.dim(), s.dim());
    let idx = |x: usize, y: usize| x * nr + y;
    Bimod::assemble(
        r.clone(),
        r.clone(),
        slots.clone(),
        |x, x2, f, y| {
            let (s, t) = (&slots[idx(x, y)], &slots[idx(x2, y)]);
            match (x < nb, x2 < nb, y < nb) {
                (false, false, false) => cm.lact(x - nb, x2 - nb, f, y - nb).clone(),
                (true, true, true) => cn.lact(x, x2, f, y).clone(),
                (true, true, false) => h.lact(x, x2, f, y - nb).clone(),
                (true, false, false) => {
                    // Hom(M_a, N_b)[-1] → C_M(a2, a): ξ ↦ (-1)^{|x|} σ(x ∘ ξ).
                    let (bo, a2, ao) = (x, x2 - nb, y - nb);
                    let xm = HomSpace::new(n.comp(bo), m.comp(a2)).unflatten(&r.basis_vec(f));
                    let from = HomSpace::new(m.comp(ao), n.comp(bo));
                    let to = HomSpace::new(m.comp(ao), m.comp(a2));
                    let off = a.hom_dim(ao, a2);
                    let sign = fld.one().signed(r.deg(x, x2, f));
                    let objs = (m.comp(ao).objs(), n.comp(bo).objs(), m.comp(a2).objs());
                    let cols = (0..from.dim())
                        .map(|k| {
                            let xi = from.unflatten(&[(k, fld.one())]);
                            let v = to.flatten(&xm.compose(&xi, m.right(), &objs.0, &objs.1, &objs.2));
                            v.into_iter().map(|(p, c)| (off + p, c * sign.clone())).collect::<SVec>()
                        })
                        .collect();
                    LinMap::from_columns(fld, t.dim(), cols)
                }
                _ => zero(s, t),
            }
        },
        |y2, y, g, x| {
            let (s, t) = (&slots[idx(x, y)], &slots[idx(x, y2)]);
            match (y2 < nb, y < nb, x < nb) {
                (false, false, false) => cm.ract(y2 - nb, y - nb, g, x - nb).clone(),
                (true, true, true) => cn.ract(y2, y, g, x).clone(),
                (false, false, true) => h.ract(y2 - nb, y - nb, g, x).clone(),
                (true, false, true) => {
                    // Hom(M_a, N_b)[-1] → C_N(b, b2): ξ ↦ σ(ξ ∘ g).
                    let (bo, b2, ao) = (x, y2, y - nb);
                    let gm = HomSpace::new(n.comp(b2), m.comp(ao)).unflatten(&r.basis_vec(g));
                    let from = HomSpace::new(m.comp(ao), n.comp(bo));
                    let to = HomSpace::new(n.comp(b2), n.comp(bo));
                    let off = b.hom_dim(b2, bo);
                    let objs = (n.comp(b2).objs(), m.comp(ao).objs(), n.comp(bo).objs());
                    let cols = (0..from.dim())
                        .map(|k| {
                            let xi = from.unflatten(&[(k, fld.one())]);
                            let v = to.flatten(&xi.compose(&gm, m.right(), &objs.0, &objs.1, &objs.2));
                            v.into_iter().map(|(p, c)| (off + p, c)).collect::<SVec>()
                        })
                        .collect();
                    LinMap::from_columns(fld, t.dim(), cols)
                }
                _ => zero(s, t),
            }
        },
    )
}

/// The canonical comparison `C_P → C'_P`: identity on the diagonal blocks
/// and on the `Hom(M, N)` part of the `(B, A)` slots, zero on `(A, B)`.
fn canonical_projection(ctx: &GluedCategoryContext, cp: &Bimod, cm: &Bimod) -> BimodMap {
    let nb = ctx.nb();
    let nr = ctx.r.n_objects();
    let fld = ctx.r.field();
    let mut maps = Vec::with_capacity(nr * nr);
    for x in 0..nr {
        for y in 0..nr {
            let (s, t) = (cp.slot(x, y), cm.slot(x, y));
            maps.push(match (x < nb, y < nb) {
                (false, true) => LinMap::zero(fld, t.dim(), s.dim()),
                _ => {
                    debug_assert_eq!(s.dim(), t.dim());
                    LinMap::identity(fld, s.dim())
                }
            });
        }
    }
    BimodMap { deg: 0, maps }
}

pub fn cotwist_matrix(datum: &GluedSphericalDatum, seed: u64) -> CotwistMatrix {
    let first_principles = cotwist_bimodule(&datum.p);
    let matrix = cotwist_matrix_bimodule(datum);
    let mut report = Report::default();
    let v = matrix.validate();
    report.push(Check::new("matrix form is a bimodule", Status::of(v.passed()), format!("{} checks", v.checks)));
    let hint = canonical_projection(&datum.ctx, &first_principles, &matrix);
    let comparison = find_explicit_quasi_iso(&first_principles, &matrix, &[hint], None, seed);
    report.push(Check::search("first-principles ~ matrix", &comparison));

    let nb = datum.ctx.nb();
    let r = &datum.ctx.r;
    for b in 0..nb {
        for a in 0..datum.ctx.a.n_objects() {
            let got = matrix.slot(b, nb + a).homology_dims();
            let want = hom_complex(datum.m.comp(a), datum.n.comp(b)).homology_dims().shift(-1);
            report.push(Check::same_dims(
                &format!("off-diagonal slot ({}, {})", r.objects()[b], r.objects()[nb + a]),
                std::slice::from_ref(&got),
                std::slice::from_ref(&want),
            ));
            report.row(format!("C'({}, {})", r.objects()[b], r.objects()[nb + a]), got);
        }
    }
    CotwistMatrix { first_principles, matrix, comparison, report }
}

/// Candidate maps `C → R^*[-1-d]` of the form `ξ ↦ Σ_k λ(ξ·e_k) e_k^*`,
/// one per basis vector of `C(x, x)` in degree `1 + d`, with and without
/// the Koszul sign `(-1)^{|e_k|}`.
pub fn serre_pairing_candidates(c: &Bimod, target: &Bimod, d: i64) -> Vec<BimodMap> {
    let r = c.left().clone();
    let fld = r.field();
    let nr = r.n_objects();
    let zero = BimodMap::zero(c, target, 0);
    let mut out = Vec::new();
    for x in 0..nr {
        let cxx = c.slot(x, x);
        for (i, _) in cxx.degs().iter().enumerate().filter(|(_, g)| **g == 1 + d) {
            for koszul in [false, true] {
                let mut f = zero.clone();
                for v in 0..nr {
                    let s = c.slot(x, v);
                    let cols = (0..s.dim())
                        .map(|col| {
                            let mut out: SVec = Vec::new();
                            for k in 0..r.hom_dim(x, v) {
                                let img = c.ract(x, v, k, x).apply(&[(col, fld.one())]);
                                if let Some((_, coef)) = img.iter().find(|(p, _)| *p == i) {
                                    let sign = if koszul { fld.one().signed(r.deg(x, v, k)) } else { fld.one() };
                                    out.push((k, coef * &sign));
                                }
                            }
                            out
                        })
                        .collect();
                    f.maps[x * nr + v] = LinMap::from_columns(fld, target.slot(x, v).dim(), cols);
                }
                out.push(f);
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct SerreShift {
    pub target: Bimod,
    pub search: QisoSearch<BimodMap>,
    pub report: Report,
}

/// Certifies `C ≃ R^*[-1-d]` for the matrix-form cotwist `C`: slotwise
/// homology first, then the structured Serre-pairing maps, then a search
/// over all elementary maps.
pub fn serre_shift_check(datum: &GluedSphericalDatum, d: i64, seed: u64) -> SerreShift {
    serre_shift_of(&cotwist_matrix_bimodule(datum), &datum.ctx.r, d, seed)
}

/// Slotwise homology of a cotwist `C` beside that of `R^*[-1-d]`, with a
/// single "slotwise homology" check. No comparison map is attempted.
pub fn serre_shift_table(c: &Bimod, r: &Arc<DGCategory>, d: i64) -> Report {
    let target = linear_dual_bimodule(r).shift(-1 - d);
    let mut report = Report::default();
    let nr = r.n_objects();
    let mut dims_ok = true;
    for x in 0..nr {
        for y in 0..nr {
            let (l, rt) = (c.slot(x, y).homology_dims(), target.slot(x, y).homology_dims());
            dims_ok &= l == rt;
            report.row(format!("C({}, {})", r.objects()[x], r.objects()[y]), l);
            report.row(format!("R*[{}]({}, {})", -1 - d, r.objects()[x], r.objects()[y]), rt);
        }
    }
    report.push(Check::new("slotwise homology", Status::of(dims_ok), ""));
    report
}

/// For a glued pair of `P'` models of `P^n`-objects: the cotwist's slotwise
/// homology against `R^*[-2n-1]`. Whether the two are quasi-isomorphic is
/// not known, so this only tabulates and reports agreement of dimensions.
pub fn p_prime_serre_table(datum: &GluedSphericalDatum, n: usize) -> Report {
    serre_shift_table(&cotwist_matrix_bimodule(datum), &datum.ctx.r, 2 * n as i64)
}

pub fn serre_shift_of(c: &Bimod, r: &Arc<DGCategory>, d: i64, seed: u64) -> SerreShift {
    let target = linear_dual_bimodule(r).shift(-1 - d);
    let mut report = serre_shift_table(c, r, d);
    let cands = closed_span(&serre_pairing_candidates(c, &target, d), c, &target);
    let mut search = find_explicit_quasi_iso(c, &target, &[], Some(&cands), seed);
    if let QisoSearch::Found { cert, .. } = &mut search {
        cert.method = "serre-pairing".into();
    } else {
        search = find_explicit_quasi_iso(c, &target, &[], None, seed);
    }
    report.push(Check::search("cotwist ~ R*[-1-d]", &search));
    SerreShift { target, search, report }
}

/// `dim H^n hom(h^x, h^y) = dim H^{-n} hom(h^y, h^x ⊗ R^*)` for all `x`, `y`, `n`.
pub fn check_serre_duality(r: &Arc<DGCategory>) -> Report {
    let rs = linear_dual_bimodule(r);
    let mut report = Report::default();
    let mut failures = Vec::new();
    for x in 0..r.n_objects() {
        let hx = TCBimodule::of_tc(&crate::twisted::TwistedComplex::representable(r, x, 0));
        let xs = hx.tensor_explicit(&rs);
        for y in 0..r.n_objects() {
            let lhs = r.hom_homology(x, y);
            let rhs = xs.slot(0, y).homology_dims();
            for n in lhs.degrees().chain(rhs.degrees().map(|k| -k)) {
                if lhs.dim(n) != rhs.dim(-n) {
                    failures.push(format!("({}, {}, {n})", r.objects()[x], r.objects()[y]));
                }
            }
            report.row(format!("hom({}, {})", r.objects()[x], r.objects()[y]), lhs);
            report.row(format!("hom({}, {} (x) R*)", r.objects()[y], r.objects()[x]), rhs);
        }
    }
    failures.dedup();
    report.push(Check::new("Serre pairing dimensions", Status::of(failures.is_empty()), failures.join(" ")));
    report
}
