use std::sync::Arc;

use dgtwist_core::dgcat::*;
use dgtwist_core::exactlinalg::{Field, GradedVectorSpace};
use dgtwist_core::twisted::*;

const Q: Field = Field::Rational;

fn gv(p: &[(i64, usize)]) -> GradedVectorSpace {
    GradedVectorSpace::from_pairs(p.iter().copied())
}

fn kt2() -> Arc<DGCategory> {
    Arc::new(truncated_polynomial(Q, 1, 2))
}

fn zz() -> Arc<DGCategory> {
    Arc::new(zigzag(Q))
}

fn rep(c: &Arc<DGCategory>, o: usize, s: i64) -> TwistedComplex {
    TwistedComplex::representable(c, o, s)
}

fn catalogue() -> Vec<TCBimodule> {
    let (k, z) = (kt2(), zz());
    let t = k.basis(0, 0).iter().position(|b| b.deg == 2).unwrap();
    let cone_t =
        TwistedComplex::new(k.clone(), vec![Gen::new(0, -1), Gen::new(0, 0)], HomMatrix::from_entries([((1, 0), k.basis_vec(t))])).unwrap();
    vec![
        TCBimodule::of_tc(&rep(&k, 0, 0)),
        TCBimodule::of_tc(&cone_t),
        TCBimodule::of_tc(&rep(&z, 0, 0)),
        TCBimodule::of_tc(&rep(&z, 1, 1)),
        TCBimodule::of_tc(&rep(&z, 0, 0).direct_sum(&rep(&z, 1, -1))),
        TCBimodule::diagonal(&z),
        TCBimodule::diagonal(&k).shift(1),
    ]
}

#[test]
fn evaluation_maps_are_closed_and_compatible() {
    for m in catalogue() {
        let ev = trace_bimodule(&m).unwrap();
        assert!(ev.source.validate().passed());
        assert!(ev.map.check(&ev.source, &ev.target).passed(), "{:?}", ev.map.check(&ev.source, &ev.target).violations);
        let t = twist_bimodule(&m).unwrap();
        assert!(t.validate().passed());
    }
}

#[test]
fn twist_of_zero_is_identity() {
    let z = zz();
    let zero = TCBimodule::zero(&Arc::new(point(Q)), &z);
    assert_eq!(twist_bimodule(&zero).unwrap(), TCBimodule::diagonal(&z));
}

#[test]
fn twist_matches_direct_cone() {
    let (k, z) = (kt2(), zz());
    for (m, xs) in [
        (TCBimodule::of_tc(&rep(&k, 0, 0)), vec![rep(&k, 0, 0), rep(&k, 0, 3)]),
        (TCBimodule::of_tc(&rep(&z, 0, 0)), vec![rep(&z, 0, 0), rep(&z, 1, 0), rep(&z, 1, 2)]),
    ] {
        let t = twist_bimodule(&m).unwrap();
        for x in xs {
            let via_bimodule = TCBimodule::of_tc(&x).tensor(&t).comp(0).homology_dims();
            let direct = trace(&m, &x).unwrap().cone().unwrap().homology_dims();
            assert_eq!(via_bimodule, direct);
        }
    }
}

#[test]
fn spherical_twists_shift_their_object() {
    // T_E(E) ≃ E[1 - d] for a d-spherical E
    let k = kt2();
    let e = rep(&k, 0, 0);
    let t = trace(&TCBimodule::of_tc(&e), &e).unwrap().cone().unwrap();
    assert_eq!(t.homology_dims(), e.shift(-1).homology_dims());
    // zigzag: T_{h^1}(h^2) = cone(h^1[-1]^2 → h^2); at vertex 1 the units
    // kill a*, b* and leave the loops of h^1
    let z = zz();
    let m = TCBimodule::of_tc(&rep(&z, 0, 0));
    let t2 = trace(&m, &rep(&z, 1, 0)).unwrap().cone().unwrap();
    assert_eq!(t2.homology_at(0), gv(&[(2, 2)]));
    assert_eq!(t2.value(1).euler(), -2);
}

#[test]
fn coaction_and_cotwist() {
    for m in catalogue() {
        let co = coaction(&m);
        assert!(co.map.check(&co.source, &co.target).passed(), "{:?}", co.map.check(&co.source, &co.target).violations);
        let cm = cotwist_bimodule(&m);
        assert!(cm.validate().passed());
        let s = Sigma::new(&m);
        assert!(s.map.check(&s.source, &s.target).passed());
        assert!(s.triangle(m.left(), 5).unwrap().is_found());
    }
    // C_E for a 2-spherical E over k is k[-3]
    let e = TCBimodule::of_tc(&rep(&kt2(), 0, 0));
    assert_eq!(cotwist_bimodule(&e).slot(0, 0).homology_dims(), gv(&[(3, 1)]));
}

#[test]
fn zig_zag_is_identity() {
    for m in catalogue() {
        let z = ZigZag::new(&m).unwrap();
        assert!(z.coact.check(&m, &z.middle).passed(), "{:?}", z.coact.check(&m, &z.middle).violations);
        assert!(z.eval.check(&z.middle, &m).passed());
        assert_eq!(z.composite(&m), TcMap::identity(&m));
    }
}
