use crate::exactlinalg::{GradedVectorSpace, SVec};
use crate::glued::triangular_to_semifree;
use crate::twisted::{
    evaluation_map, find_tc_quasi_iso, recognize_semifree, trace, trace_bimodule, twist_bimodule, HomMatrix, HomSpace, TCBimodule, TcMap,
    TwistedComplex,
};

use super::datum::GluedSphericalDatum;
use super::report::{Check, Report};
use super::SphericalError;

/// The twist around the glued functor, computed twice, with the composite
/// `T_M ⊗_C T_N` it is compared to.
#[derive(Clone, Debug)]
pub struct GluedTwist {
    /// `cone(P^∨ ⊗_R P → C)` with `P^∨` resolved over `R`.
    pub first_principles: TCBimodule,
    /// Total complex of `M^∨⊗φ⊗N → M^∨⊗M ⊕ N^∨⊗N → C`.
    pub convolution: TCBimodule,
    pub composite: TCBimodule,
    pub report: Report,
}

/// The first-principles route: the trace of `P` over `R`.
pub fn glued_trace(datum: &GluedSphericalDatum) -> Result<(TCBimodule, TcMap, TCBimodule), SphericalError> {
    let model = triangular_to_semifree(&datum.ctx, &datum.p_dual)?;
    let elems = datum.dual_elements(&model);
    let diag = TCBimodule::diagonal(datum.c());
    let source = model.tc.tensor(&datum.p);
    let map = evaluation_map(&model.tc, &elems, &datum.p, &diag);
    Ok((source, map, diag))
}

pub fn first_principles_twist(datum: &GluedSphericalDatum) -> Result<TCBimodule, SphericalError> {
    let (source, map, diag) = glued_trace(datum)?;
    Ok(map.cone(&source, &diag)?)
}

/// Row offsets of the `P_{o_k}` blocks inside `(Q ⊗ P)_l`.
fn block_offsets(q: &TwistedComplex, p: &TCBimodule) -> Vec<usize> {
    let mut off = Vec::with_capacity(q.len());
    let mut acc = 0;
    for g in q.gens() {
        off.push(acc);
        acc += p.comp(g.obj).len();
    }
    off
}

/// The convolution route. `W = (M^∨ ⊗_A φ) ⊗_B N` maps to `M^∨ ⊗_A M` by
/// evaluating `φ` on `N` and to `N^∨ ⊗_B N` by composing `M^∨` with `φ`;
/// the two traces kill the difference strictly.
pub fn convolution_twist(datum: &GluedSphericalDatum) -> Result<TCBimodule, SphericalError> {
    let (m, n) = (&datum.m, &datum.n);
    let c = datum.c();
    let phi = &datum.ctx.phi;
    let tm = trace_bimodule(m)?;
    let tn = trace_bimodule(n)?;
    let qm = &tm.model;
    let wm = recognize_semifree(&qm.tc.tensor_explicit(phi))?;
    let w = wm.tc.tensor(n);

    let nc = c.n_objects();
    let mut alpha = Vec::with_capacity(nc);
    let mut beta = Vec::with_capacity(nc);
    for l in 0..nc {
        let qml = qm.tc.comp(l);
        let qnl = tn.model.tc.comp(l);
        let offm = block_offsets(qml, m);
        let offn = block_offsets(qnl, n);
        let offw = block_offsets(wm.tc.comp(l), n);
        let (mut a, mut b) = (HomMatrix::new(), HomMatrix::new());
        for (r, gr) in wm.tc.comp(l).gens().iter().enumerate() {
            let nr = n.comp(gr.obj);
            // ω_r = Σ_k (k, x_rk) with x_rk ∈ Hom(N_{o_r}, M_{o_k}).
            let omega = &wm.gens[l][r];
            let mut off = 0;
            for (k, gk) in qml.gens().iter().enumerate() {
                let width = phi.slot(gk.obj, gr.obj).dim();
                let part: SVec = omega.iter().filter(|(p, _)| *p >= off && *p < off + width).map(|(p, v)| (p - off, v.clone())).collect();
                off += width;
                let x = HomSpace::new(nr, m.comp(gk.obj)).unflatten(&part);
                for (j, q, v) in x.iter() {
                    a.add_to(offm[k] + j, offw[r] + q, v);
                }
            }
            // ψ ∘ x in N^∨, expressed in the model of N^∨ and acting on N.
            let comp = datum.p_dual.rho.maps[l * datum.ctx.nb() + gr.obj].apply(omega);
            let basis = qnl.value_basis(gr.obj);
            for (pos, coeff) in tn.model.coords(l, gr.obj, &comp) {
                let (k, e) = basis[pos];
                let act = n.rho(gr.obj, qnl.gens()[k].obj, e);
                for (q2, q, v) in act.iter() {
                    b.axpy_entry(offn[k] + q2, offw[r] + q, &-coeff.clone(), v);
                }
            }
        }
        alpha.push(a);
        beta.push(b);
    }
    let mid = tm.source.direct_sum(&tn.source);
    let u = TcMap {
        deg: 0,
        comps: alpha.iter().zip(&beta).enumerate().map(|(l, (a, b))| a.add(&b.offset(tm.source.comp(l).len(), 0))).collect(),
    };
    let cu = u.cone(&w, &mid)?;
    let diag = TCBimodule::diagonal(c);
    let v = TcMap {
        deg: 0,
        comps: (0..nc)
            .map(|l| {
                let nw = w.comp(l).len();
                tm.map.comps[l].offset(0, nw).add(&tn.map.comps[l].offset(0, nw + tm.source.comp(l).len()))
            })
            .collect(),
    };
    Ok(v.cone(&cu, &diag)?)
}

/// `T_N(T_M(h^c))` computed by two successive one-sided cones.
pub fn iterated_twist(m: &TCBimodule, n: &TCBimodule, x: &TwistedComplex) -> Result<TwistedComplex, SphericalError> {
    let y = trace(m, x)?.cone()?;
    Ok(trace(n, &y)?.cone()?)
}

/// Builds both routes, the composite `T_M ⊗ T_N`, and certifies them
/// pairwise; also compares homology on every representable with the
/// iterated one-sided twists.
pub fn glued_twist(datum: &GluedSphericalDatum, seed: u64) -> Result<GluedTwist, SphericalError> {
    let first_principles = first_principles_twist(datum)?;
    let convolution = convolution_twist(datum)?;
    let composite = twist_bimodule(&datum.m)?.tensor(&twist_bimodule(&datum.n)?);
    let mut report = Report::default();
    report.push(Check::search("first-principles ~ convolution", &find_tc_quasi_iso(&first_principles, &convolution, seed)));
    report.push(Check::search("first-principles ~ T_M (x) T_N", &find_tc_quasi_iso(&first_principles, &composite, seed)));
    report.push(Check::search("convolution ~ T_M (x) T_N", &find_tc_quasi_iso(&convolution, &composite, seed)));
    let c = datum.c();
    for o in 0..c.n_objects() {
        let h = TwistedComplex::representable(c, o, 0);
        let lhs = first_principles.comp(o).homology_dims();
        let rhs = iterated_twist(&datum.m, &datum.n, &h)?.homology_dims();
        let name = format!("homology on h^{}", c.objects()[o]);
        report.push(Check::same_dims(&name, &lhs, &rhs));
        for (x, d) in lhs.iter().enumerate() {
            report.row(format!("T(h^{})({})", c.objects()[o], c.objects()[x]), d.clone());
        }
    }
    Ok(GluedTwist { first_principles, convolution, composite, report })
}

/// Per-object homology of a twisted bimodule evaluated on every
/// representable; the rows are indexed by `(object, value object)`.
pub fn homology_on_representables(t: &TCBimodule) -> Vec<Vec<GradedVectorSpace>> {
    t.comps().iter().map(|x| x.homology_dims()).collect()
}

/// `t_N ∘ t_M ≃ t_{t_N(M)} ∘ t_N` with `t_N(M) = M ⊗_C T_N`: the bimodules
/// `T_M ⊗ T_N` and `T_N ⊗ T_{t_N(M)}` are certified quasi-isomorphic and
/// compared on every representable.
pub fn verify_commutativity(m: &TCBimodule, n: &TCBimodule, seed: u64) -> Result<Report, SphericalError> {
    let tn = twist_bimodule(n)?;
    let tnm = m.tensor(&tn);
    let lhs = twist_bimodule(m)?.tensor(&tn);
    let rhs = tn.tensor(&twist_bimodule(&tnm)?);
    let mut report = Report::default();
    report.push(Check::search("T_M (x) T_N ~ T_N (x) T_{t_N(M)}", &find_tc_quasi_iso(&lhs, &rhs, seed)));
    let c = m.right();
    for o in 0..c.n_objects() {
        let (l, r) = (lhs.comp(o).homology_dims(), rhs.comp(o).homology_dims());
        report.push(Check::same_dims(&format!("homology on h^{}", c.objects()[o]), &l, &r));
    }
    Ok(report)
}

/// With `M = 0` the glued twist is `T_N`.
pub fn degenerate_gluing_check(datum: &GluedSphericalDatum, seed: u64) -> Result<Check, SphericalError> {
    let t = first_principles_twist(datum)?;
    let tn = twist_bimodule(&datum.n)?;
    Ok(Check::search("glued twist ~ T_N", &find_tc_quasi_iso(&t, &tn, seed)))
}
