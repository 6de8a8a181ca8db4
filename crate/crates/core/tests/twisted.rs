use std::sync::Arc;

use dgtwist_core::dgcat::*;
use dgtwist_core::exactlinalg::{Field, GradedVectorSpace, LinMap};
use dgtwist_core::twisted::*;

const Q: Field = Field::Rational;

fn gv(p: &[(i64, usize)]) -> GradedVectorSpace {
    GradedVectorSpace::from_pairs(p.iter().copied())
}

fn idx(c: &DGCategory, x: usize, y: usize, name: &str) -> usize {
    c.basis(x, y).iter().position(|b| b.name == name).unwrap_or_else(|| panic!("no {name} in hom({x},{y})"))
}

fn zz() -> Arc<DGCategory> {
    Arc::new(zigzag(Q))
}

/// `h^1 → h^2` twisted by `a*` in a single block.
fn zz_cone(z: &Arc<DGCategory>) -> TwistedComplex {
    let f = idx(z, 0, 1, "a*");
    let delta = HomMatrix::from_entries([((1, 0), z.basis_vec(f))]);
    TwistedComplex::new(z.clone(), vec![Gen::new(0, 0), Gen::new(1, 0)], delta).unwrap()
}

#[test]
fn representables_compute_homs() {
    let z = zz();
    let h1 = TwistedComplex::representable(&z, 0, 0);
    let h2 = TwistedComplex::representable(&z, 1, 0);
    assert_eq!(hom_complex(&h1, &h1).homology_dims(), gv(&[(0, 1), (2, 1)]));
    assert_eq!(hom_complex(&h2, &h1).homology_dims(), gv(&[(1, 2)]));
    assert_eq!(hom_complex(&h2.shift(1), &h1).homology_dims(), gv(&[(2, 2)]));
}

#[test]
fn twisting_cochain_is_validated() {
    let z = zz();
    let f = idx(&z, 0, 1, "a*");
    // wrong degree: a* has degree 1 but the shift gap asks for 2
    let bad = TwistedComplex::new(z.clone(), vec![Gen::new(0, 1), Gen::new(1, 0)], HomMatrix::from_entries([((1, 0), z.basis_vec(f))]));
    assert!(bad.is_err());
    // upper triangular entries are rejected
    let up = TwistedComplex::new(z.clone(), vec![Gen::new(1, 0), Gen::new(0, 0)], HomMatrix::from_entries([((0, 1), z.basis_vec(f))]));
    assert!(up.is_err());
    // δ² ≠ 0: a* then a lands on the nonzero loop
    let a = idx(&z, 1, 0, "a");
    let mc = TwistedComplex::new(
        z.clone(),
        vec![Gen::new(0, 0), Gen::new(1, 0), Gen::new(0, 0)],
        HomMatrix::from_entries([((1, 0), z.basis_vec(f)), ((2, 1), z.basis_vec(a))]),
    );
    assert!(mc.is_err());
    assert!(zz_cone(&z).validate().passed());
}

#[test]
fn cone_of_identity_is_acyclic() {
    let z = zz();
    let x = zz_cone(&z);
    let c = ChainMorphism::identity(&x).cone().unwrap();
    assert!(c.is_acyclic());
    assert!(ChainMorphism::identity(&x).is_quasi_iso());
    assert!(!ChainMorphism::zero(&x, &x, 0).is_quasi_iso());
}

#[test]
fn diagonal_expands_to_diagonal() {
    for c in [zz(), Arc::new(truncated_polynomial(Q, 1, 2)), Arc::new(kronecker(Q, 0))] {
        let d = TCBimodule::diagonal(&c);
        assert!(d.validate().passed());
        assert_eq!(d.expand(), Bimod::diagonal(&c));
        assert_eq!(d.tensor_explicit(&Bimod::diagonal(&c)), d.expand());
    }
}

#[test]
fn tensor_with_diagonal_is_structural_identity() {
    let z = zz();
    let diag = TCBimodule::diagonal(&z);
    let m = TCBimodule::of_tc(&zz_cone(&z)).shift(3);
    assert!(m.validate().passed());
    assert_eq!(m.tensor(&diag), m);
    let s = diag.shift(1).direct_sum(&diag);
    assert!(s.validate().passed());
    assert_eq!(diag.tensor(&s), s);
    assert_eq!(s.tensor(&diag), s);
    assert_eq!(m.tensor_explicit(&Bimod::diagonal(&z)), m.expand());
}

#[test]
fn tensor_matches_explicit_tensor() {
    let z = zz();
    let m = TCBimodule::of_tc(&zz_cone(&z));
    let v = TCBimodule::diagonal(&z).shift(-1).direct_sum(&TCBimodule::diagonal(&z));
    let t = m.tensor(&v);
    assert!(t.validate().passed());
    assert_eq!(t.expand(), m.tensor_explicit(&v.expand()));
    assert!(t.expand().validate().passed());
}

#[test]
fn duals_validate_and_double_dual_is_signed() {
    let z = zz();
    for m in [
        TCBimodule::of_tc(&zz_cone(&z).shift(1)),
        TCBimodule::diagonal(&z).shift(2),
        TCBimodule::diagonal(&Arc::new(truncated_polynomial(Q, 1, 2))),
    ] {
        let d = m.dual();
        assert!(d.validate().passed(), "{:?}", d.validate().violations);
        let dd = d.dual().rebased(m.left(), m.right()).unwrap();
        assert!(dd.validate().passed());
        let s: Vec<i64> = dd.comps().iter().flat_map(|x| x.shifts()).collect();
        let s0: Vec<i64> = m.comps().iter().flat_map(|x| x.shifts()).collect();
        assert_eq!(s, s0);
    }
    let d = TCBimodule::of_tc(&zz_cone(&z)).dual();
    assert_eq!(d.comp(0).shifts(), vec![0, 0]);
    assert_eq!(
        TCBimodule::of_tc(&TwistedComplex::representable(&z, 0, 0).direct_sum(&TwistedComplex::representable(&z, 1, 2)))
            .dual()
            .comp(0)
            .shifts(),
        vec![-2, 0]
    );
}

#[test]
fn hom_bimodule_validates() {
    let z = zz();
    let diag = TCBimodule::diagonal(&z);
    let h = hom_bimodule(&diag, &diag);
    assert!(h.validate().passed());
    // Hom(h^b, h^a) = hom(b, a): the diagonal again
    assert_eq!(h, Bimod::diagonal(&z));
    let m = TCBimodule::of_tc(&zz_cone(&z));
    let hm = hom_bimodule(&diag, &m);
    assert!(hm.validate().passed());
    assert_eq!(hm, m.expand());
    let hn = hom_bimodule(&m, &diag);
    assert!(hn.validate().passed());
}

#[test]
fn cone_of_bimodule_map() {
    let z = zz();
    let diag = TCBimodule::diagonal(&z);
    let id = TcMap::identity(&diag);
    assert!(id.check(&diag, &diag).passed());
    let c = id.cone(&diag, &diag).unwrap();
    assert!(c.validate().passed());
    assert!(c.comps().iter().all(TwistedComplex::is_acyclic));
    assert_eq!(c.expand(), id.expand(&diag, &diag).cone(&diag.expand(), &diag.expand()).unwrap());
}

#[test]
fn yoneda_kernel_maps_are_closed_and_compatible() {
    let z = zz();
    let diag = TCBimodule::diagonal(&z);
    let x = diag.shift(1).direct_sum(&diag);
    let y = diag.expand().direct_sum(&diag.expand().shift(1));
    for p in -2..=2 {
        let (sp, basis) = yoneda_closed_maps(&x, &y, p);
        for v in &basis {
            let f = sp.to_map(&x, &y, v);
            assert!(f.check(&x.expand(), &y).passed(), "degree {p}: {:?}", f.check(&x.expand(), &y).violations);
            assert!(f.defect(&x.expand(), &y).is_empty());
        }
    }
}

#[test]
fn hom_to_explicit_matches_hom_complex() {
    let z = zz();
    let x = zz_cone(&z).shift(1);
    for y in [zz_cone(&z), TwistedComplex::representable(&z, 1, -1), x.clone()] {
        let ye = TCBimodule::of_tc(&y).expand();
        let h = hom_to_explicit(&x, &ye, 0);
        assert!(h.d().compose(h.d()).is_zero());
        assert_eq!(h.homology_dims(), hom_complex(&x, &y).homology_dims());
    }
}

#[test]
fn quasi_iso_searches() {
    let z = zz();
    let diag = TCBimodule::diagonal(&z);
    let s = find_tc_quasi_iso(&diag, &diag, 7);
    assert_eq!(s.certificate().unwrap().attempt, 0);
    assert!(s.map().unwrap().check(&diag, &diag).passed());

    let x = TCBimodule::of_tc(&zz_cone(&z));
    let q = find_quasi_iso(&x, &x.expand(), &[], 11);
    assert!(q.is_found());
    assert!(q.certificate().unwrap().closed_dim >= 1);

    let e = find_explicit_quasi_iso(&diag.expand(), &Bimod::diagonal(&z), &[], None, 3);
    assert!(e.is_found());

    // h^1 is not quasi-isomorphic to an acyclic module
    let h1 = TCBimodule::of_tc(&TwistedComplex::representable(&z, 0, 0));
    let acyc = TcMap::identity(&h1).cone(&h1, &h1).unwrap();
    assert!(!find_tc_quasi_iso(&h1, &acyc, 1).is_found());
    assert!(!find_tc_quasi_iso(&acyc, &h1, 1).is_found());
}

fn assert_model(y: &Bimod) -> SemifreeModel {
    let m = recognize_semifree(y).unwrap();
    let x = m.tc.expand();
    assert!(m.comparison.check(&x, y).passed());
    assert!(m.inverse.check(y, &x).passed());
    assert_eq!(m.comparison.compose(&m.inverse), BimodMap::identity(y));
    m
}

#[test]
fn recognizes_free_bimodules() {
    for c in [zz(), Arc::new(kronecker(Q, 0)), Arc::new(truncated_polynomial(Q, 1, 2)), Arc::new(quiver_a2())] {
        let m = assert_model(&Bimod::diagonal(&c));
        assert!(m.tc.comps().iter().all(|x| x.len() == 1));
    }
    let z = zz();
    let x = TCBimodule::of_tc(&zz_cone(&z).shift(2).direct_sum(&TwistedComplex::representable(&z, 1, -1)));
    let m = assert_model(&x.expand());
    assert_eq!(m.tc.comp(0).len(), 3);
    assert_eq!(m.tc.comp(0).delta().nnz(), 1);
    let v = TCBimodule::diagonal(&z).shift(-1).direct_sum(&TCBimodule::diagonal(&z));
    let t = x.tensor(&v);
    assert_model(&t.expand());
    assert_model(&hom_bimodule(&TCBimodule::diagonal(&z), &x));
}

fn quiver_a2() -> DGCategory {
    let v = vec!["1".to_string(), "2".to_string()];
    let arrows = vec![Arrow { name: "x".into(), src: 0, tgt: 1, deg: 0 }];
    quiver_path_category(Q, &v, &arrows, &[], 1).unwrap()
}

#[test]
fn simple_module_is_not_semifree() {
    let r = Arc::new(truncated_polynomial(Q, 1, 2));
    let k = Arc::new(point(Q));
    let u = r.unit(0)[0].0;
    let s = dgtwist_core::exactlinalg::FiniteComplex::from_basis_unchecked(vec![0], LinMap::zero(Q, 1, 1));
    let simple = Bimod::assemble(
        k,
        r.clone(),
        vec![s],
        |_, _, _, _| LinMap::identity(Q, 1),
        |_, _, g, _| {
            if g == u {
                LinMap::identity(Q, 1)
            } else {
                LinMap::zero(Q, 1, 1)
            }
        },
    );
    assert!(simple.validate().passed());
    assert!(matches!(recognize_semifree(&simple), Err(TwistedError::NotSemifree(_))));
}
