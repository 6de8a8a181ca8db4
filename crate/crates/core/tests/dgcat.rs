use std::sync::Arc;

use dgtwist_core::dgcat::*;
use dgtwist_core::exactlinalg::{Field, GradedVectorSpace};

const Q: Field = Field::Rational;

fn gv(p: &[(i64, usize)]) -> GradedVectorSpace {
    GradedVectorSpace::from_pairs(p.iter().copied())
}

fn total_dims(c: &DGCategory) -> GradedVectorSpace {
    let mut acc = GradedVectorSpace::zero();
    for x in 0..c.n_objects() {
        for y in 0..c.n_objects() {
            acc = acc.sum(&c.hom_dims(x, y));
        }
    }
    acc
}

#[test]
fn point_is_valid() {
    let k = point(Q);
    assert!(k.validate().passed());
    assert_eq!(k.total_dim(), 1);
}

#[test]
fn truncated_polynomials() {
    let c = truncated_polynomial(Q, 1, 2);
    assert!(c.validate().passed());
    assert_eq!(c.hom_dims(0, 0), gv(&[(0, 1), (2, 1)]));
    let e = truncated_polynomial(Q, 1, -1);
    assert_eq!(e.hom_dims(0, 0), gv(&[(-1, 1), (0, 1)]));
    let p2 = truncated_polynomial(Q, 2, 2);
    assert!(p2.validate().passed());
    assert_eq!(p2.hom_dims(0, 0), gv(&[(0, 1), (2, 1), (4, 1)]));
}

#[test]
fn broken_associativity_is_reported() {
    // In k[t]/t^3 with |t| = 0, declaring t∘t^2 = t^2 makes (t∘t)∘t differ from t∘(t∘t).
    let c = truncated_polynomial(Q, 2, 0);
    let bad = c.with_comp_override(0, 0, 0, 1, 2, vec![(2, Q.one())]);
    let rep = bad.validate();
    assert!(!rep.passed());
    assert!(rep.violations.iter().any(|v| v.axiom == "associativity"), "{:?}", rep.violations);
}

#[test]
fn kronecker_and_a2() {
    let k = kronecker(Q, 0);
    assert!(k.validate().passed());
    assert_eq!(k.hom_dim(1, 0), 2);
    assert_eq!(k.hom_dim(0, 1), 0);
    assert_eq!(k.total_dim(), 4);
    let a2 = quiver_path_category(Q, &["1".into(), "2".into()], &[Arrow { name: "a".into(), src: 0, tgt: 1, deg: 0 }], &[], 1).unwrap();
    assert_eq!(a2.total_dim(), 3);
    let single = quiver_path_category(Q, &["v".into()], &[], &[], 0).unwrap();
    assert_eq!(single.total_dim(), 1);
}

#[test]
fn loop_without_relation_is_rejected() {
    let r = quiver_path_category(Q, &["v".into()], &[Arrow { name: "x".into(), src: 0, tgt: 0, deg: 0 }], &[], 3);
    assert!(matches!(r, Err(DgError::InfiniteDimensional(_))));
}

#[test]
fn loop_with_relation_is_truncated_polynomial() {
    let rel = Relation { terms: vec![(Q.int(1), vec![0, 0, 0])] };
    let c = quiver_path_category(Q, &["v".into()], &[Arrow { name: "x".into(), src: 0, tgt: 0, deg: 2 }], &[rel], 2).unwrap();
    assert!(c.validate().passed());
    assert_eq!(c.hom_dims(0, 0), gv(&[(0, 1), (2, 1), (4, 1)]));
}

#[test]
fn non_homogeneous_relation_is_rejected() {
    let arrows = [Arrow { name: "x".into(), src: 0, tgt: 0, deg: 1 }, Arrow { name: "y".into(), src: 0, tgt: 0, deg: 2 }];
    let rel = Relation { terms: vec![(Q.int(1), vec![0]), (Q.int(1), vec![1])] };
    let r = quiver_path_category(Q, &["v".into()], &arrows, &[rel], 2);
    assert!(matches!(r, Err(DgError::NonHomogeneous(_))));
}

#[test]
fn trivial_extensions() {
    let k = Arc::new(point(Q));
    let t = trivial_extension(&k, 2);
    assert!(t.validate().passed());
    assert_eq!(t.hom_dims(0, 0), gv(&[(0, 1), (2, 1)]));
    let t0 = trivial_extension(&k, 0);
    assert_eq!(t0.hom_dims(0, 0), gv(&[(0, 2)]));
    let z = zigzag(Q);
    assert!(z.validate().passed(), "{:?}", z.validate().violations);
    assert_eq!(z.total_dim(), 8);
    assert_eq!(z.hom_dims(0, 0), gv(&[(0, 1), (2, 1)]));
    assert_eq!(z.hom_dims(1, 1), gv(&[(0, 1), (2, 1)]));
    assert_eq!(z.hom_dims(0, 1), gv(&[(1, 2)]));
    assert_eq!(z.hom_dims(1, 0), gv(&[(1, 2)]));
}

#[test]
fn opposites() {
    let z = zigzag(Q);
    let zo = opposite(&z);
    assert!(zo.validate().passed());
    assert_eq!(zo.hom_dims(0, 1), z.hom_dims(1, 0));
    assert_eq!(opposite(&zo), z.clone().with_name(&format!("{}^op^op", z.name())));
    let c = truncated_polynomial(Q, 1, 2);
    let co = opposite(&c);
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(co.comp_basis(0, 0, 0, j, i), c.comp_basis(0, 0, 0, j, i));
        }
    }
}

#[test]
fn tensor_categories() {
    let c = truncated_polynomial(Q, 1, 2);
    let t = tensor_cat(&c, &c);
    assert!(t.validate().passed());
    assert_eq!(t.hom_dims(0, 0), gv(&[(0, 1), (2, 2), (4, 1)]));
    let k = point(Q);
    let z = zigzag(Q);
    let kz = tensor_cat(&k, &z);
    assert!(kz.validate().passed());
    assert_eq!(total_dims(&kz), total_dims(&z));
    // Odd degrees exercise the Koszul sign.
    let e = truncated_polynomial(Q, 1, -1);
    assert!(tensor_cat(&e, &e).validate().passed());
    assert!(tensor_cat(&z, &e).validate().passed());
}

fn kk_bimodule(v: &Arc<DGCategory>, a: &Arc<DGCategory>, b: &Arc<DGCategory>) -> Bimod {
    // φ(•, •) = hom(•, •) of a one-object category `v`, restricted to k-k actions.
    let cx = v.hom_complex(0, 0);
    let f = v.field();
    Bimod::assemble(
        a.clone(),
        b.clone(),
        vec![cx.clone()],
        |_, _, _, _| dgtwist_core::LinMap::identity(f, cx.dim()),
        |_, _, _, _| dgtwist_core::LinMap::identity(f, cx.dim()),
    )
}

#[test]
fn gluing_examples() {
    let k = Arc::new(point(Q));
    let zero = Bimod::zero(k.clone(), k.clone());
    let g0 = glue(&k, &k, &zero).unwrap();
    assert!(g0.validate().passed());
    assert_eq!(g0.hom_dim(0, 1), 0);
    assert_eq!(g0.hom_dim(1, 0), 0);
    let v2 = Arc::new(trivial_extension(&k, 0));
    let phi = kk_bimodule(&v2, &k, &k);
    let r = glue(&k, &k, &phi).unwrap();
    assert!(r.validate().passed());
    assert_eq!(r.total_dim(), 4);
    assert_eq!(r.hom_dims(0, 1), gv(&[(0, 2)]));
    let kt = Arc::new(truncated_polynomial(Q, 1, 2));
    let phi2 = kk_bimodule(&kt, &k, &k);
    let r2 = glue(&k, &k, &phi2).unwrap();
    assert!(r2.validate().passed());
    assert_eq!(r2.total_dim(), 4);
    assert_eq!(r2.hom_dims(0, 1), gv(&[(0, 1), (2, 1)]));
}

#[test]
fn linear_duals() {
    let k = Arc::new(point(Q));
    let dk = linear_dual_bimodule(&k);
    assert_eq!(dk.slot(0, 0).spaces(), gv(&[(0, 1)]));
    let kt = Arc::new(truncated_polynomial(Q, 1, 2));
    let d = linear_dual_bimodule(&kt);
    assert!(d.validate().passed());
    assert_eq!(d.slot(0, 0).spaces(), gv(&[(-2, 1), (0, 1)]));
    let z = Arc::new(zigzag(Q));
    let dz = linear_dual_bimodule(&z);
    assert!(dz.validate().passed());
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(dz.slot(x, y).spaces(), z.hom_dims(x, y).dual());
        }
    }
    let dd = dz.linear_dual();
    assert!(dd.validate().passed());
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(dd.slot(x, y).spaces(), z.hom_dims(y, x));
        }
    }
    let e = Arc::new(truncated_polynomial(Q, 1, -1));
    assert!(linear_dual_bimodule(&e).validate().passed());
    assert!(linear_dual_bimodule(&e).shift(3).validate().passed());
}
