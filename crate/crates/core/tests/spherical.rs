use std::sync::Arc;

use dgtwist_core::dgcat::*;
use dgtwist_core::exactlinalg::{Field, GradedVectorSpace};
use dgtwist_core::spherical::*;
use dgtwist_core::twisted::{hom_complex, TCBimodule, TwistedComplex};

const Q: Field = Field::Rational;

fn gv(p: &[(i64, usize)]) -> GradedVectorSpace {
    GradedVectorSpace::from_pairs(p.iter().copied())
}

fn statuses(r: &Report) -> Vec<(String, Status)> {
    r.checks.iter().map(|c| (c.name.clone(), c.status)).collect()
}

#[test]
fn kt2_gluing_has_end_e_as_cross_homs() {
    let p = kt2_pair(Q);
    let d = glue_spherical(&p.m, &p.n).unwrap();
    assert!(d.validate().passed(), "{:?}", statuses(&d.validate()));
    let r = &d.ctx.r;
    assert_eq!(r.objects(), ["*_b", "*_a"]);
    assert_eq!(r.hom_homology(0, 0), gv(&[(0, 1)]));
    assert_eq!(r.hom_homology(0, 1), gv(&[(0, 1), (2, 1)]));
    assert_eq!(r.hom_homology(1, 0), gv(&[]));
    assert_eq!(r.hom_homology(1, 1), gv(&[(0, 1)]));
}

#[test]
fn zigzag_gluing_is_k_k2_k_in_degree_zero() {
    let p = zigzag_pair(Q);
    let d = glue_spherical(&p.m, &p.n).unwrap();
    assert!(d.validate().passed());
    let r = &d.ctx.r;
    let dims: Vec<GradedVectorSpace> = [(0, 0), (0, 1), (1, 1), (1, 0)].iter().map(|&(x, y)| r.hom_homology(x, y)).collect();
    assert_eq!(dims, vec![gv(&[(0, 1)]), gv(&[(0, 2)]), gv(&[(0, 1)]), gv(&[])]);
}

#[test]
fn zero_gluing_is_disjoint() {
    let p = zero_pair(Q);
    let d = glue_spherical(&p.m, &p.n).unwrap();
    assert!(d.validate().passed());
    assert_eq!(d.ctx.r.hom_dim(0, 1), 0);
    assert!(d.p.comp(1).is_empty());
}

#[test]
fn glued_twist_three_routes_on_every_pair() {
    for p in all_pairs(Q) {
        let d = glue_spherical(&p.m, &p.n).unwrap();
        let t = glued_twist(&d, 0).unwrap();
        assert!(t.report.passed(), "{}: {:?}", p.name, statuses(&t.report));
    }
}

#[test]
fn zero_gluing_twist_is_t_n() {
    let p = zero_pair(Q);
    let d = glue_spherical(&p.m, &p.n).unwrap();
    assert_eq!(degenerate_gluing_check(&d, 0).unwrap().status, Status::Pass);
}

#[test]
fn cotwist_matrix_agrees_with_first_principles() {
    for p in all_pairs(Q) {
        let d = glue_spherical(&p.m, &p.n).unwrap();
        let c = cotwist_matrix(&d, 0);
        assert!(c.report.passed(), "{}: {:?}", p.name, statuses(&c.report));
    }
}

#[test]
fn cotwist_off_diagonal_is_shifted_hom() {
    let d = glue_spherical(&kt2_pair(Q).m, &kt2_pair(Q).n).unwrap();
    let c = cotwist_matrix_bimodule(&d);
    assert_eq!(c.slot(0, 1).homology_dims(), gv(&[(1, 1), (3, 1)]));
    assert_eq!(c.slot(1, 0).dim(), 0);
    // M = h²[1], N = h¹: Hom(M, N) sits in degree 2, its shift in degree 3.
    let z = zigzag_pair(Q);
    let d = glue_spherical(&z.m, &z.n).unwrap();
    assert_eq!(cotwist_matrix_bimodule(&d).slot(0, 1).homology_dims(), gv(&[(3, 2)]));
}

#[test]
fn serre_shift_on_spherical_pairs() {
    for p in [kt2_pair(Q), zigzag_pair(Q)] {
        let d = glue_spherical(&p.m, &p.n).unwrap();
        let s = serre_shift_check(&d, 2, 0);
        assert!(s.report.passed(), "{}: {:?}", p.name, statuses(&s.report));
        assert_eq!(s.search.certificate().unwrap().method, "serre-pairing");
    }
}

#[test]
fn single_object_cotwist_is_dual_shift() {
    let c = kt2(Q);
    let e = TCBimodule::of_tc(&TwistedComplex::representable(&c, 0, 0));
    let ce = cotwist_bimodule(&e);
    assert_eq!(ce.slot(0, 0).homology_dims(), gv(&[(3, 1)]));
    let s = serre_shift_of(&ce, e.left(), 2, 0);
    assert!(s.report.passed());
}

#[test]
fn cotwist_of_zero_is_the_diagonal() {
    let a = Arc::new(point(Q));
    let z = TCBimodule::zero(&a, &kt2(Q));
    assert_eq!(cotwist_bimodule(&z).slot(0, 0).homology_dims(), gv(&[(0, 1)]));
}

#[test]
fn serre_duality_tables() {
    let glued = glue_spherical(&zigzag_pair(Q).m, &zigzag_pair(Q).n).unwrap().ctx.r;
    for r in [Arc::new(point(Q)), Arc::new(zigzag(Q)), glued, kt2(Q)] {
        let rep = check_serre_duality(&r);
        assert!(rep.passed(), "{}", r.name());
    }
}

#[test]
fn spherical_objects() {
    let c = kt2(Q);
    let e = TwistedComplex::representable(&c, 0, 0);
    let r = check_spherical_object(&e, 2, 0);
    assert!(r.report.passed(), "{:?}", statuses(&r.report));
    // Brute force: hom(*, *) in k[t]/t² has one basis vector in degrees 0 and 2.
    assert_eq!(r.end_dims, GradedVectorSpace::of_degrees(&c.hom_degs(0, 0)));
    assert!(r.report.checks.last().unwrap().certificate.as_ref().unwrap().attempt < 16);

    let z = Arc::new(zigzag(Q));
    assert!(check_spherical_object(&TwistedComplex::representable(&z, 0, 0), 2, 0).report.passed());

    let k = Arc::new(point(Q));
    let h = TwistedComplex::representable(&k, 0, 0);
    assert_eq!(check_spherical_object(&h, 2, 0).status(), Status::Fail);
}

#[test]
fn p_objects() {
    for n in 1..=2 {
        let p = p_object(Q, n);
        let r = check_p_object(&p, n, 0);
        assert!(r.report.passed(), "{n}: {:?}", statuses(&r.report));
        assert_eq!(r.powers, (1..=n).map(|k| (k, true)).collect::<Vec<_>>());
    }
    // A 1-P-object is exactly a 2-spherical object.
    let p = p_object(Q, 1);
    assert_eq!(check_p_object(&p, 1, 0).end_dims, check_spherical_object(&p, 2, 0).end_dims);
    assert_eq!(check_p_object(&p, 1, 0).status(), check_spherical_object(&p, 2, 0).status());
}

#[test]
fn p_object_negative_control() {
    // Two degree-2 loops with all products zero: End = {0:1, 2:2}.
    let arrows = vec![Arrow { name: "s".into(), src: 0, tgt: 0, deg: 2 }, Arrow { name: "t".into(), src: 0, tgt: 0, deg: 2 }];
    let rels: Vec<Relation> = [[0, 0], [0, 1], [1, 0], [1, 1]].iter().map(|p| Relation { terms: vec![(Q.one(), p.to_vec())] }).collect();
    let c = Arc::new(quiver_path_category(Q, &["v".to_string()], &arrows, &rels, 1).unwrap());
    let e = TwistedComplex::representable(&c, 0, 0);
    let r = check_p_object(&e, 1, 0);
    assert_eq!(r.end_dims, gv(&[(0, 1), (2, 2)]));
    assert_eq!(r.status(), Status::Fail);
}

#[test]
fn p_prime_model() {
    for n in 1..=2usize {
        let p = p_object(Q, n);
        let pp = p_prime(&p, None).unwrap();
        assert!(!pp.degenerate);
        assert_eq!(pp.bimodule.comp(0).len(), 2);
        assert_eq!(p_prime_cotwist_check(&pp.bimodule, n, 0).status, Status::Pass);
        // End(P') over C: the cone of t on End(P).
        let e = hom_complex(pp.bimodule.comp(0), pp.bimodule.comp(0)).homology_dims();
        assert_eq!(e.euler(), 0);
    }
    let p = p_object(Q, 1);
    let zero = dgtwist_core::twisted::HomMatrix::new();
    let pp = p_prime(&p, Some(zero)).unwrap();
    assert!(pp.degenerate);
}

#[test]
fn certificates_for_every_pair() {
    for p in all_pairs(Q) {
        let d = glue_spherical(&p.m, &p.n).unwrap();
        let kind = match (p.d, p.name.strip_prefix("pprime")) {
            (Some(d), _) => CotwistKind::Serre { d },
            (None, Some(n)) => CotwistKind::Shift { shift: -2 * n.parse::<i64>().unwrap() - 2 },
            (None, None) => CotwistKind::Unknown,
        };
        let r = spherical_certificates(&d, kind, 0).unwrap();
        assert!(r.passed(), "{}: {:?}", p.name, statuses(&r));
    }
}

#[test]
fn commutativity_relation() {
    let p = zigzag_pair(Q);
    let r = verify_commutativity(&p.m, &p.n, 0).unwrap();
    assert!(r.passed(), "{:?}", statuses(&r));
    let k = kt2_pair(Q);
    assert!(verify_commutativity(&k.m, &k.m, 0).unwrap().passed());
}

#[test]
fn reports_are_deterministic() {
    let p = zigzag_pair(Q);
    let d = glue_spherical(&p.m, &p.n).unwrap();
    let a = glued_twist(&d, 7).unwrap().report;
    let b = glued_twist(&d, 7).unwrap().report;
    assert_eq!(a, b);
}

#[test]
fn p_prime_cotwist_dims_match_shifted_serre() {
    // Only dimensions: a comparison map is not known to exist.
    for n in 1..=2i64 {
        let p = p_prime_pair(Q, n as usize);
        let d = glue_spherical(&p.m, &p.n).unwrap();
        let r = p_prime_serre_table(&d, n as usize);
        assert_eq!(r.checks[0].status, Status::Pass);
        let cross = r.homology.iter().find(|h| h.label == "C(*_b, *_a)").unwrap();
        assert_eq!(cross.dims, gv(&[(0, 1), (1, 1), (2 * n + 1, 1), (2 * n + 2, 1)]));
    }
}
