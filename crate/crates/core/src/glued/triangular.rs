use std::sync::Arc;

use crate::dgcat::{Bimod, BimodMap, DGCategory, ValidationReport};
use crate::exactlinalg::{sparse, LinMap, SVec};
use crate::twisted::{recognize_semifree, values_to_tc_map, yoneda_map, Certificate, TCBimodule, TcMap, TwistedComplex};

use super::context::GluedCategoryContext;
use super::GluedError;

/// A right `R`-module (with a commuting left `L`-action) in triangular form:
/// `F_A` semifree over `A`, `F_B` explicit over `B`, and the structure map
/// `ρ: F_A ⊗_A φ → F_B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularModule {
    pub fa: TCBimodule,
    pub fb: Bimod,
    pub rho: BimodMap,
}

impl TriangularModule {
    pub fn new(ctx: &GluedCategoryContext, fa: TCBimodule, fb: Bimod, rho: BimodMap) -> Result<Self, GluedError> {
        let t = TriangularModule { fa, fb, rho };
        t.validate(ctx).into_result()?;
        Ok(t)
    }

    pub fn left(&self) -> &Arc<DGCategory> {
        self.fa.left()
    }

    /// `F_A ⊗_A φ`.
    pub fn fa_phi(&self, ctx: &GluedCategoryContext) -> Bimod {
        self.fa.tensor_explicit(&ctx.phi)
    }

    pub fn validate(&self, ctx: &GluedCategoryContext) -> ValidationReport {
        let mut rep = self.fa.validate();
        rep.merge(self.fb.validate());
        rep.checks += 1;
        if self.rho.deg != 0 {
            rep.fail("structure map degree", format!("degree {}", self.rho.deg));
        }
        rep.merge(self.rho.check(&self.fa_phi(ctx), &self.fb));
        rep
    }

    /// The module as an explicit `L`-`R` bimodule; the cross action of
    /// `x ∈ φ(a, b)` sends `m ∈ F_A(a)` to `ρ(m ⊗ x)`.
    pub fn to_explicit(&self, ctx: &GluedCategoryContext) -> Bimod {
        let ea = self.fa.expand();
        let nb = ctx.nb();
        let nr = ctx.r.n_objects();
        let nl = self.left().n_objects();
        let fld = ctx.r.field();
        let mut slots = Vec::with_capacity(nl * nr);
        for l in 0..nl {
            for x in 0..nr {
                slots.push(if x < nb { self.fb.slot(l, x).clone() } else { ea.slot(l, x - nb).clone() });
            }
        }
        let phi = &ctx.phi;
        Bimod::assemble(
            self.left().clone(),
            ctx.r.clone(),
            slots,
            |l, l2, f, x| {
                if x < nb {
                    self.fb.lact(l, l2, f, x).clone()
                } else {
                    ea.lact(l, l2, f, x - nb).clone()
                }
            },
            |x2, x, g, l| match (x2 < nb, x < nb) {
                (true, true) => self.fb.ract(x2, x, g, l).clone(),
                (false, false) => ea.ract(x2 - nb, x - nb, g, l).clone(),
                (true, false) => {
                    let (b, a) = (x2, x - nb);
                    let fa = self.fa.comp(l);
                    let mut off = vec![0];
                    for gn in fa.gens() {
                        off.push(off.last().unwrap() + phi.slot(gn.obj, b).dim());
                    }
                    let rho = &self.rho.maps[l * nb + b];
                    let cols = fa
                        .value_basis(a)
                        .into_iter()
                        .map(|(i, e)| {
                            let v = phi.lact(a, fa.gens()[i].obj, e, b).columns[g].iter().map(|(k, c)| (off[i] + k, c.clone()));
                            rho.apply(&v.collect::<SVec>())
                        })
                        .collect();
                    LinMap::from_columns(fld, self.fb.slot(l, b).dim(), cols)
                }
                (false, true) => unreachable!("no morphisms from A-objects to B-objects"),
            },
        )
    }
}

impl TriangularModule {
    /// Triangular form of an explicit `L`-`R` bimodule whose restriction to
    /// `A` is semifree; returns the form and the comparison of its
    /// [`to_explicit`](Self::to_explicit) with `x`.
    pub fn from_explicit(ctx: &GluedCategoryContext, x: &Bimod) -> Result<(Self, BimodMap), GluedError> {
        let nb = ctx.nb();
        let na = ctx.a.n_objects();
        let l = x.left().clone();
        let nl = l.n_objects();
        let ids: Vec<usize> = (0..nl).collect();
        let bs: Vec<usize> = (0..nb).collect();
        let as_: Vec<usize> = (nb..nb + na).collect();
        let xa = x.restrict(l.clone(), &ids, ctx.a.clone(), &as_);
        let fb = x.restrict(l.clone(), &ids, ctx.b.clone(), &bs);
        let model = recognize_semifree(&xa)?;
        let fa = model.tc.clone();
        let src = fa.tensor_explicit(&ctx.phi);
        let fld = ctx.r.field();
        let mut maps = Vec::with_capacity(nl * nb);
        for c in 0..nl {
            for b in 0..nb {
                let mut cols = Vec::new();
                for (i, g) in fa.comp(c).gens().iter().enumerate() {
                    let a = ctx.a_obj(g.obj);
                    for w in 0..ctx.phi.slot(g.obj, b).dim() {
                        cols.push(x.ract(b, a, w, c).apply(&model.gens[c][i]));
                    }
                }
                debug_assert_eq!(cols.len(), src.slot(c, b).dim());
                maps.push(LinMap::from_columns(fld, fb.slot(c, b).dim(), cols));
            }
        }
        let rho = BimodMap { deg: 0, maps };
        let t = TriangularModule::new(ctx, fa, fb, rho)?;
        let ex = t.to_explicit(ctx);
        let mut cmp = Vec::with_capacity(nl * (nb + na));
        for c in 0..nl {
            for y in 0..nb + na {
                cmp.push(if y < nb { LinMap::identity(fld, x.slot(c, y).dim()) } else { model.comparison.maps[c * na + y - nb].clone() });
            }
        }
        let comparison = BimodMap { deg: 0, maps: cmp };
        let rep = comparison.check(&ex, x);
        if !rep.passed() {
            return Err(GluedError::Certificate(format!("triangular comparison: {:?}", rep.violations.first())));
        }
        Ok((t, comparison))
    }
}

/// `Ind_A X = (X, X ⊗ φ, id)`.
pub fn ind_a(ctx: &GluedCategoryContext, x: &TCBimodule) -> TriangularModule {
    let fb = x.tensor_explicit(&ctx.phi);
    let rho = BimodMap::identity(&fb);
    TriangularModule { fa: x.clone(), fb, rho }
}

/// `Ind_B Y = (0, Y, 0)`.
pub fn ind_b(ctx: &GluedCategoryContext, y: &TCBimodule) -> TriangularModule {
    ind_b_explicit(ctx, y.expand())
}

pub(crate) fn ind_b_explicit(ctx: &GluedCategoryContext, fb: Bimod) -> TriangularModule {
    let fa = TCBimodule::zero(fb.left(), &ctx.a);
    let rho = BimodMap::zero(&fa.tensor_explicit(&ctx.phi), &fb, 0);
    TriangularModule { fa, fb, rho }
}

/// `(X, 0, 0)`: `X` pulled back along the projection `R → A`.
pub fn res_proj_a(ctx: &GluedCategoryContext, x: &TCBimodule) -> TriangularModule {
    let fb = Bimod::zero(x.left().clone(), ctx.b.clone());
    let rho = BimodMap::zero(&x.tensor_explicit(&ctx.phi), &fb, 0);
    TriangularModule { fa: x.clone(), fb, rho }
}

/// A semifree model of a triangular module over `R` together with an
/// explicit quasi-isomorphism onto [`TriangularModule::to_explicit`].
#[derive(Clone, Debug)]
pub struct TriangularModel {
    pub tc: TCBimodule,
    pub comparison: BimodMap,
    pub cert: Certificate,
}

/// The total complex of `Ind_B(F_A ⊗ φ)[1] ⊕ Ind_B(F_B) ⊕ Ind_A(F_A)`, twisted
/// by `ρ` into `F_B` and by the canonical unit into `F_A`.
pub fn triangular_to_semifree(ctx: &GluedCategoryContext, f: &TriangularModule) -> Result<TriangularModel, GluedError> {
    let zx = f.fa_phi(ctx);
    let z = recognize_semifree(&zx)?;
    let bm = recognize_semifree(&f.fb)?;
    let nb = ctx.nb();
    let nl = f.left().n_objects();

    // ρ transported to the models.
    let vals: Vec<Vec<SVec>> = (0..nl)
        .map(|l| {
            z.tc.comp(l)
                .gens()
                .iter()
                .enumerate()
                .map(|(k, g)| bm.coords(l, g.obj, &f.rho.maps[l * nb + g.obj].apply(&z.gens[l][k])))
                .collect()
        })
        .collect();
    let rho_tc = values_to_tc_map(&z.tc, &bm.tc, &vals);

    let zl = ctx.lift_b(&z.tc);
    let tgt = ctx.lift_b(&bm.tc).direct_sum(&ctx.lift_a(&f.fa));
    let mut comps = Vec::with_capacity(nl);
    for l in 0..nl {
        let nbl = bm.tc.comp(l).len();
        let fa = f.fa.comp(l);
        let mut m = rho_tc.comps[l].clone();
        for (k, g) in z.tc.comp(l).gens().iter().enumerate() {
            // z.gens[l][k] ∈ ⊕_i φ(o_i, o_k)[s_i]; block i is the entry (i, k).
            let mut off = 0;
            for (i, gi) in fa.gens().iter().enumerate() {
                let w = ctx.phi.slot(gi.obj, g.obj).dim();
                let e: SVec = z.gens[l][k].iter().filter(|(p, _)| *p >= off && *p < off + w).map(|(p, c)| (p - off, -c)).collect();
                if !e.is_empty() {
                    m.add_to(nbl + i, k, &e);
                }
                off += w;
            }
        }
        comps.push(m);
    }
    let map = TcMap { deg: 0, comps };
    let tc = map.cone(&zl, &tgt)?;

    let fx = f.to_explicit(ctx);
    let elems: Vec<Vec<SVec>> = (0..nl)
        .map(|l| {
            let mut v: Vec<SVec> = vec![Vec::new(); z.tc.comp(l).len()];
            v.extend(bm.gens[l].iter().cloned());
            let fa = f.fa.comp(l);
            for (i, g) in fa.gens().iter().enumerate() {
                v.push(unit_at(fa, i, g.obj, &ctx.a));
            }
            v
        })
        .collect();
    let comparison = yoneda_map(&tc, &fx, 0, &elems).ok_or_else(|| GluedError::Certificate("generator degrees".into()))?;
    let src = tc.expand();
    let rep = comparison.check(&src, &fx);
    if !rep.passed() {
        return Err(GluedError::Certificate(format!("comparison map: {:?}", rep.violations.first())));
    }
    if !comparison.is_quasi_iso(&src, &fx) {
        return Err(GluedError::Certificate("comparison map is not a quasi-isomorphism".into()));
    }
    let cert = Certificate { method: "canonical".into(), attempt: 0, seed: 0, closed_dim: 0 };
    Ok(TriangularModel { tc, comparison, cert })
}

/// The element `(i, 1)` of `X(o_i)`.
pub(crate) fn unit_at(x: &TwistedComplex, i: usize, obj: usize, cat: &DGCategory) -> SVec {
    let basis = x.value_basis(obj);
    let v =
        cat.unit(obj).iter().map(|(e, c)| (basis.iter().position(|&(j, k)| j == i && k == *e).expect("unit in value basis"), c.clone()));
    sparse::collect(cat.field(), v)
}
