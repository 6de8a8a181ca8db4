use std::sync::Arc;

use dgtwist_core::dgcat::*;
use dgtwist_core::exactlinalg::{Field, GradedVectorSpace};
use dgtwist_core::glued::*;
use dgtwist_core::twisted::*;

const Q: Field = Field::Rational;

fn gv(p: &[(i64, usize)]) -> GradedVectorSpace {
    GradedVectorSpace::from_pairs(p.iter().copied())
}

fn rep(c: &Arc<DGCategory>, o: usize, s: i64) -> TwistedComplex {
    TwistedComplex::representable(c, o, s)
}

fn of(x: &TwistedComplex) -> TCBimodule {
    TCBimodule::of_tc(x)
}

/// Contexts whose A and B are the point.
fn point_contexts() -> Vec<GluedCategoryContext> {
    let z = Arc::new(zigzag(Q));
    let k = Arc::new(truncated_polynomial(Q, 1, 2));
    let pair = |m: TwistedComplex, n: TwistedComplex| {
        let (m, n) = (of(&m), of(&n));
        GluedCategoryContext::new(n.left(), m.left(), hom_bimodule(&n, &m)).unwrap()
    };
    vec![kronecker_context(Q), pair(rep(&z, 1, 1), rep(&z, 0, 0)), pair(rep(&k, 0, 0), rep(&k, 0, 0))]
}

fn general_contexts() -> Vec<GluedCategoryContext> {
    let k = Arc::new(truncated_polynomial(Q, 1, 2));
    let z = Arc::new(zigzag(Q));
    let mut out = point_contexts();
    out.push(GluedCategoryContext::new(&k, &k, Bimod::diagonal(&k)).unwrap());
    // A = k, B = Z, φ = Hom_Z(-, h^1) seen from the diagonal
    out.push(GluedCategoryContext::new(&z, &k_point(), hom_bimodule(&TCBimodule::diagonal(&z), &of(&rep(&z, 0, 0)))).unwrap());
    out
}

fn k_point() -> Arc<DGCategory> {
    Arc::new(point(Q))
}

#[test]
fn kronecker_context_is_the_kronecker_quiver() {
    let ctx = kronecker_context(Q);
    assert!(ctx.r.validate().passed());
    assert!(ctx.cross_homs_match());
    assert_eq!(ctx.r.hom_dims(0, 1), gv(&[(0, 2)]));
    assert_eq!(ctx.r.hom_dims(1, 0), gv(&[]));
    let h = of(&rep(&ctx.a, 0, 0));
    assert_eq!(ind_a(&ctx, &h).to_explicit(&ctx).total_dim(), 3);
}

#[test]
fn kronecker_homs_between_projectives_and_simples() {
    let ctx = kronecker_context(Q);
    let (ha, hb) = (of(&rep(&ctx.a, 0, 0)), of(&rep(&ctx.b, 0, 0)));
    let (p1, p2) = (ind_a(&ctx, &ha), ind_b(&ctx, &hb));
    let s1 = res_proj_a(&ctx, &ha);
    assert_eq!(hom_r(&ctx, &p2, &p1).unwrap().homology_dims(), gv(&[(0, 2)]));
    // S_2 = P_2 since nothing maps out of A into B
    assert_eq!(hom_r(&ctx, &p2, &s1).unwrap().homology_dims(), gv(&[]));
    let s2_shift = ind_b(&ctx, &of(&rep(&ctx.b, 0, 1)));
    assert_eq!(hom_r(&ctx, &s1, &s2_shift).unwrap().homology_dims(), gv(&[(0, 2)]));
}

#[test]
fn semifree_models_are_certified() {
    for ctx in general_contexts() {
        assert!(ctx.r.validate().passed());
        let x = of(&rep(&ctx.a, 0, 0));
        let y = of(&rep(&ctx.b, 0, 1));
        for f in [ind_a(&ctx, &x), ind_b(&ctx, &y), res_proj_a(&ctx, &x), res_proj_a(&ctx, &x.shift(-2))] {
            assert!(f.validate(&ctx).passed());
            assert!(f.to_explicit(&ctx).validate().passed(), "{:?}", f.to_explicit(&ctx).validate().violations);
            let m = triangular_to_semifree(&ctx, &f).unwrap();
            assert!(m.tc.validate().passed());
        }
        // Ind_A of a representable is the representable of R
        let m = triangular_to_semifree(&ctx, &ind_a(&ctx, &x)).unwrap();
        let direct = rep(&ctx.r, ctx.a_obj(0), 0);
        for c in 0..ctx.r.n_objects() {
            assert_eq!(m.tc.comp(0).homology_at(c), direct.homology_at(c));
        }
    }
}

#[test]
fn projection_triangles() {
    for ctx in general_contexts() {
        let x = of(&rep(&ctx.a, 0, 0));
        let y = of(&rep(&ctx.b, 0, 0));
        for f in [ind_a(&ctx, &x), ind_b(&ctx, &y), res_proj_a(&ctx, &x)] {
            let p = sod_project(&ctx, &f).unwrap();
            assert!(p.ind_a_triangle, "{}", ctx.r.name());
            assert!(p.ind_b_triangle, "{}", ctx.r.name());
        }
    }
}

#[test]
fn hom_identities_and_adjunctions() {
    for ctx in general_contexts() {
        let x = rep(&ctx.a, 0, 0);
        let y = rep(&ctx.b, 0, 0);
        let r = check_gluing_hom_identities(&ctx, &x, &y).unwrap();
        assert!(r.passed(), "{:?}", r);
        for f in [ind_a(&ctx, &of(&x.shift(1))), res_proj_a(&ctx, &of(&x)), ind_b(&ctx, &of(&y))] {
            let r = check_adjunctions(&ctx, &x, &y, &f).unwrap();
            assert!(r.passed(), "{:?}", r);
        }
    }
}

#[test]
fn zero_gluing_has_no_cross_homs() {
    let k = k_point();
    let ctx = GluedCategoryContext::new(&k, &k, Bimod::zero(k.clone(), k.clone())).unwrap();
    let x = of(&rep(&ctx.a, 0, 0));
    assert_eq!(res_proj_a(&ctx, &x).to_explicit(&ctx), ind_a(&ctx, &x).to_explicit(&ctx));
    let r = check_gluing_hom_identities(&ctx, &rep(&ctx.a, 0, 0), &rep(&ctx.b, 0, 0)).unwrap();
    assert!(r.checks.iter().all(|c| c.lhs.is_zero()));
}
