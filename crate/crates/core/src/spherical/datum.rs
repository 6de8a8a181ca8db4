use crate::dgcat::{Bimod, BimodMap};
use crate::exactlinalg::{LinMap, SVec};
use crate::glued::{GluedCategoryContext, TriangularModule};
use crate::twisted::{evaluation, hom_bimodule, recognize_semifree, HomMatrix, HomSpace, SemifreeModel, TCBimodule, TwistedComplex};

use super::report::{Check, Report, Status};
use super::SphericalError;

/// Two twisted bimodules over the same `C`, glued along `φ = Hom_C(N, M)`.
///
/// `p` is the left `R`-module `(M, N)` valued in `C`-modules: `N` on the
/// `B`-objects, `M` on the `A`-objects, and `x ∈ φ(a, b)` acting as the map
/// `N_b → M_a` it is. `p_dual = Hom_C(P, C)` is kept in triangular form.
#[derive(Clone, Debug)]
pub struct GluedSphericalDatum {
    pub m: TCBimodule,
    pub n: TCBimodule,
    pub ctx: GluedCategoryContext,
    pub p: TCBimodule,
    pub p_dual: TriangularModule,
    /// Semifree model of `M^∨ = Hom_C(M, C)`, the `A`-part of `p_dual`.
    pub m_dual: SemifreeModel,
}

pub fn glue_spherical(m: &TCBimodule, n: &TCBimodule) -> Result<GluedSphericalDatum, SphericalError> {
    if !m.right().same_structure(n.right()) {
        return Err(SphericalError::Mismatch("M and N live over different categories".into()));
    }
    let c = m.right().clone();
    let phi = hom_bimodule(n, m);
    let ctx = GluedCategoryContext::new(n.left(), m.left(), phi)?;
    let nb = ctx.nb();
    let comps: Vec<TwistedComplex> = n.comps().iter().chain(m.comps()).map(|x| x.rebased(&c)).collect();
    let p = TCBimodule::new(ctx.r.clone(), c.clone(), comps, |x, x2, f| match (x < nb, x2 < nb) {
        (true, true) => n.rho(x, x2, f).clone(),
        (false, false) => m.rho(x - nb, x2 - nb, f).clone(),
        (true, false) => HomSpace::new(n.comp(x), m.comp(x2 - nb)).unflatten(&ctx.r.basis_vec(f)),
        (false, true) => HomMatrix::new(),
    })?;

    let diag = TCBimodule::diagonal(&c);
    let m_dual = recognize_semifree(&hom_bimodule(m, &diag))?;
    let fb = hom_bimodule(n, &diag);
    let rho = dual_structure_map(&ctx, m, n, &m_dual, &fb);
    let p_dual = TriangularModule::new(&ctx, m_dual.tc.clone(), fb, rho)?;
    Ok(GluedSphericalDatum { m: m.clone(), n: n.clone(), ctx, p, p_dual, m_dual })
}

/// `M^∨ ⊗_A φ → N^∨`, `ψ ⊗ x ↦ ψ ∘ x`.
fn dual_structure_map(ctx: &GluedCategoryContext, m: &TCBimodule, n: &TCBimodule, md: &SemifreeModel, fb: &Bimod) -> BimodMap {
    let c = m.right();
    let fld = c.field();
    let nb = ctx.nb();
    let mut maps = Vec::with_capacity(c.n_objects() * nb);
    for l in 0..c.n_objects() {
        let h = TwistedComplex::representable(c, l, 0);
        for b in 0..nb {
            let nbc = n.comp(b);
            let to = HomSpace::new(nbc, &h);
            let mut cols = Vec::new();
            for (k, g) in md.tc.comp(l).gens().iter().enumerate() {
                let ma = m.comp(g.obj);
                let psi = HomSpace::new(ma, &h).unflatten(&md.gens[l][k]);
                let xs = HomSpace::new(nbc, ma);
                for w in 0..ctx.phi.slot(g.obj, b).dim() {
                    let x = xs.unflatten(&[(w, fld.one())]);
                    cols.push(to.flatten(&psi.compose(&x, c, &nbc.objs(), &ma.objs(), &h.objs())));
                }
            }
            maps.push(LinMap::from_columns(fld, fb.slot(l, b).dim(), cols));
        }
    }
    BimodMap { deg: 0, maps }
}

impl GluedSphericalDatum {
    pub fn c(&self) -> &std::sync::Arc<crate::dgcat::DGCategory> {
        self.m.right()
    }

    /// The generators of a semifree model of `P^∨` over `R`, as elements of
    /// `Hom_C(P_x, h^l)` (flattened), for use with
    /// [`evaluation_map`](crate::twisted::evaluation_map).
    pub(crate) fn dual_elements(&self, model: &crate::glued::TriangularModel) -> Vec<Vec<SVec>> {
        let nb = self.ctx.nb();
        let na = self.ctx.a.n_objects();
        let nr = self.ctx.r.n_objects();
        model
            .tc
            .comps()
            .iter()
            .enumerate()
            .map(|(l, ql)| {
                ql.gens()
                    .iter()
                    .enumerate()
                    .map(|(k, g)| {
                        let u = crate::glued::unit_at(ql, k, g.obj, &self.ctx.r);
                        let v = model.comparison.maps[l * nr + g.obj].apply(&u);
                        if g.obj < nb {
                            v
                        } else {
                            self.m_dual.comparison.maps[l * na + g.obj - nb].apply(&v)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Structural checks: validity of `P`, `C`-semifreeness of its
    /// components, and the cross action agreeing with the trace
    /// `Hom_C(N, M) ⊗_B N → M` on generators.
    pub fn validate(&self) -> Report {
        let mut rep = Report::default();
        let v = self.p.validate();
        rep.push(Check::new("P is a twisted bimodule", Status::of(v.passed()), format!("{} checks", v.checks)));
        rep.push(Check::equal("cross homs equal phi", &self.ctx.cross_homs_match(), &true));
        rep.push(Check::equal("rho is the trace", &self.rho_is_trace(), &true));
        rep
    }

    fn rho_is_trace(&self) -> bool {
        let nb = self.ctx.nb();
        let Ok(ev) = evaluation(&self.n, &self.m) else {
            return false;
        };
        (0..self.m.comps().len()).all(|a| {
            let mut off = 0;
            ev.model.tc.comp(a).gens().iter().enumerate().all(|(k, g)| {
                let nq = self.n.comp(g.obj).len();
                let via_rho = self.p.rho_elem(g.obj, nb + a, &ev.model.gens[a][k]);
                let via_ev = ev.map.comps[a].block(&(0..self.m.comp(a).len()).collect::<Vec<_>>(), &(off..off + nq).collect::<Vec<_>>());
                off += nq;
                via_rho == via_ev
            })
        })
    }
}
