use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use dgtwist_core::dgcat::{truncated_polynomial, zigzag};
use dgtwist_core::spherical::{
    check_spherical_object, cotwist_matrix, glue_spherical, glued_twist, kt2_pair, serre_shift_check, zigzag_pair,
};
use dgtwist_core::twisted::{hom_complex, ChainMorphism, TwistedComplex};
use dgtwist_core::Field;

const Q: Field = Field::Rational;

fn homology(c: &mut Criterion) {
    // cone(id) ⊕ h over k[t]/t^5: a few dozen basis vectors per hom space.
    let a = Arc::new(truncated_polynomial(Q, 4, 2));
    let h = TwistedComplex::representable(&a, 0, 0);
    let x = ChainMorphism::identity(&h.direct_sum(&h.shift(3))).cone().unwrap().direct_sum(&h);
    let hom = hom_complex(&x, &x);
    c.bench_function("homology/End over k[t]/t^5", |b| b.iter(|| hom.homology_dims()));
    c.bench_function("hom_complex/End over k[t]/t^5", |b| b.iter(|| hom_complex(&x, &x)));
}

fn gluing(c: &mut Criterion) {
    let z = zigzag_pair(Q);
    c.bench_function("glue_spherical/zigzag", |b| b.iter(|| glue_spherical(&z.m, &z.n).unwrap()));
}

fn twists(c: &mut Criterion) {
    let mut g = c.benchmark_group("certification");
    g.sample_size(10);
    for p in [kt2_pair(Q), zigzag_pair(Q)] {
        let d = glue_spherical(&p.m, &p.n).unwrap();
        g.bench_function(format!("glued_twist/{}", p.name), |b| b.iter(|| glued_twist(&d, 0).unwrap()));
        g.bench_function(format!("cotwist_matrix/{}", p.name), |b| b.iter(|| cotwist_matrix(&d, 0)));
        g.bench_function(format!("serre_shift/{}", p.name), |b| b.iter(|| serre_shift_check(&d, 2, 0)));
    }
    let e = TwistedComplex::representable(&Arc::new(zigzag(Q)), 0, 0);
    g.bench_function("spherical_object/zigzag", |b| {
        b.iter_batched(|| e.clone(), |e| check_spherical_object(&e, 2, 0), BatchSize::SmallInput)
    });
    g.finish();
}

criterion_group!(benches, homology, gluing, twists);
criterion_main!(benches);
