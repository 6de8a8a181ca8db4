use serde::Serialize;

use crate::dgcat::{Bimod, BimodMap};
use crate::exactlinalg::{FiniteComplex, GradedVectorSpace, LinMap};
use crate::twisted::{hom_complex, hom_to_explicit, recognize_semifree, TCBimodule, TwistedComplex};

use super::context::GluedCategoryContext;
use super::triangular::{ind_a, ind_b, ind_b_explicit, res_proj_a, triangular_to_semifree, TriangularModule};
use super::GluedError;

/// The two projection triangles of a triangular module.
#[derive(Clone, Debug)]
pub struct SodProjection {
    /// `F_B`, the part seen by `Ind_B`.
    pub b_part: Bimod,
    /// `F_A`, the part seen by the restriction to `A`.
    pub a_part: TCBimodule,
    /// `Ind_B(cone ρ) ≃ cone(Ind_A F_A → F)`.
    pub ind_a_triangle: bool,
    /// `cone(Ind_B F_B → F) ≃ (F_A, 0, 0)`.
    pub ind_b_triangle: bool,
}

pub fn sod_project(ctx: &GluedCategoryContext, f: &TriangularModule) -> Result<SodProjection, GluedError> {
    let fx = f.to_explicit(ctx);
    let nb = ctx.nb();
    let nr = ctx.r.n_objects();
    let fld = ctx.r.field();
    let slot = |m: &Bimod, k: usize| m.slots()[k].dim();

    // Ind_A F_A → F: ρ on B-objects, the identity on A-objects.
    let ia = ind_a(ctx, &f.fa).to_explicit(ctx);
    let maps = (0..ia.slots().len())
        .map(|k| if k % nr < nb { f.rho.maps[(k / nr) * nb + k % nr].clone() } else { LinMap::identity(fld, slot(&ia, k)) })
        .collect();
    let unit_a = BimodMap { deg: 0, maps };
    let c1 = unit_a.cone(&ia, &fx)?;
    let cone_rho = f.rho.cone(&f.fa_phi(ctx), &f.fb)?;
    let t1 = ind_b_explicit(ctx, cone_rho).to_explicit(ctx);
    // The B-part of the cone is cone(ρ) itself; the A-part is cone(id).
    let incl1 = BimodMap {
        deg: 0,
        maps: (0..c1.slots().len())
            .map(|k| if k % nr < nb { LinMap::identity(fld, slot(&c1, k)) } else { LinMap::zero(fld, slot(&c1, k), slot(&t1, k)) })
            .collect(),
    };
    let ind_a_triangle = incl1.check(&t1, &c1).passed() && incl1.is_quasi_iso(&t1, &c1);

    // Ind_B F_B → F: the identity on B-objects.
    let ib = ind_b_explicit(ctx, f.fb.clone()).to_explicit(ctx);
    let maps = (0..ib.slots().len())
        .map(|k| if k % nr < nb { LinMap::identity(fld, slot(&ib, k)) } else { LinMap::zero(fld, slot(&fx, k), 0) })
        .collect();
    let c2 = BimodMap { deg: 0, maps }.cone(&ib, &fx)?;
    let t2 = res_proj_a(ctx, &f.fa).to_explicit(ctx);
    let proj2 = BimodMap {
        deg: 0,
        maps: (0..c2.slots().len())
            .map(|k| if k % nr < nb { LinMap::zero(fld, 0, slot(&c2, k)) } else { LinMap::identity(fld, slot(&c2, k)) })
            .collect(),
    };
    let ind_b_triangle = proj2.check(&c2, &t2).passed() && proj2.is_quasi_iso(&c2, &t2);
    Ok(SodProjection { b_part: f.fb.clone(), a_part: f.fa.clone(), ind_a_triangle, ind_b_triangle })
}

/// `Hom_R(F, G)` for the first object of the left category.
pub fn hom_r(ctx: &GluedCategoryContext, f: &TriangularModule, g: &TriangularModule) -> Result<FiniteComplex, GluedError> {
    let model = triangular_to_semifree(ctx, f)?;
    Ok(hom_to_explicit(model.tc.comp(0), &g.to_explicit(ctx), 0))
}

/// One degreewise comparison of homology dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimCheck {
    pub name: String,
    pub lhs: GradedVectorSpace,
    pub rhs: GradedVectorSpace,
    pub pass: bool,
}

impl DimCheck {
    pub fn new(name: &str, lhs: GradedVectorSpace, rhs: GradedVectorSpace) -> Self {
        DimCheck { name: name.into(), pass: lhs == rhs, lhs, rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomIdentityReport {
    pub checks: Vec<DimCheck>,
}

impl HomIdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// The gluing identities for `X` over `A` and `Y` over `B`:
/// `Hom(Ind_B Y, Ind_A X) ≅ Hom_B(Y, X ⊗ φ)`, `Hom(Ind_A X, Ind_B Y) = 0`,
/// `Hom(Ind_B Y, (X, 0, 0)) = 0` and `Hom((X, 0, 0), Ind_B Y) ≅ Hom_B(X ⊗ φ[1], Y)`.
pub fn check_gluing_hom_identities(
    ctx: &GluedCategoryContext,
    x: &TwistedComplex,
    y: &TwistedComplex,
) -> Result<HomIdentityReport, GluedError> {
    let (xm, ym) = (TCBimodule::of_tc(x), TCBimodule::of_tc(y));
    let (ia, ib, ra) = (ind_a(ctx, &xm), ind_b(ctx, &ym), res_proj_a(ctx, &xm));
    let x_phi = xm.tensor_explicit(&ctx.phi);
    let x_phi_model = recognize_semifree(&x_phi)?.tc.comp(0).clone();
    let zero = GradedVectorSpace::zero();
    let h = |f: &TriangularModule, g: &TriangularModule| hom_r(ctx, f, g).map(|c| c.homology_dims());
    Ok(HomIdentityReport {
        checks: vec![
            DimCheck::new("Hom(Ind_B Y, Ind_A X) = Hom_B(Y, X⊗φ)", h(&ib, &ia)?, hom_to_explicit(y, &x_phi, 0).homology_dims()),
            DimCheck::new("Hom(Ind_A X, Ind_B Y) = 0", h(&ia, &ib)?, zero.clone()),
            DimCheck::new("Hom(Ind_B Y, Res X) = 0", h(&ib, &ra)?, zero),
            DimCheck::new("Hom(Res X, Ind_B Y) = Hom_B(X⊗φ[1], Y)", h(&ra, &ib)?, hom_complex(&x_phi_model.shift(1), y).homology_dims()),
        ],
    })
}

/// `Hom(Ind_A X, F) ≅ Hom_A(X, F_A)`, `Hom(Ind_B Y, F) ≅ Hom_B(Y, F_B)` and
/// `Hom(F, (X, 0, 0)) ≅ Hom_A(F_A, X)`.
pub fn check_adjunctions(
    ctx: &GluedCategoryContext,
    x: &TwistedComplex,
    y: &TwistedComplex,
    f: &TriangularModule,
) -> Result<HomIdentityReport, GluedError> {
    let (xm, ym) = (TCBimodule::of_tc(x), TCBimodule::of_tc(y));
    let h = |a: &TriangularModule, b: &TriangularModule| hom_r(ctx, a, b).map(|c| c.homology_dims());
    Ok(HomIdentityReport {
        checks: vec![
            DimCheck::new("Hom(Ind_A X, F) = Hom_A(X, F_A)", h(&ind_a(ctx, &xm), f)?, hom_complex(x, f.fa.comp(0)).homology_dims()),
            DimCheck::new("Hom(Ind_B Y, F) = Hom_B(Y, F_B)", h(&ind_b(ctx, &ym), f)?, hom_to_explicit(y, &f.fb, 0).homology_dims()),
            DimCheck::new("Hom(F, Res X) = Hom_A(F_A, X)", h(f, &res_proj_a(ctx, &xm))?, hom_complex(f.fa.comp(0), x).homology_dims()),
        ],
    })
}
