//! Randomized property suites, shared by `tests/properties.rs` and the
//! acceptance target. Each suite draws its cases from a fixed ChaCha seed so
//! a failure reproduces exactly.

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

use dgtwist_core::dgcat::{kronecker, opposite, tensor_cat, trivial_extension, truncated_polynomial, zigzag, Bimod, DGCategory};
use dgtwist_core::exactlinalg::sparse::axpy;
use dgtwist_core::glued::{
    check_adjunctions, check_gluing_hom_identities, ind_a, ind_b, kronecker_context, res_proj_a, GluedCategoryContext,
};
use dgtwist_core::spherical::{check_spherical_object, glue_spherical, glued_twist, kt2_pair, zero_pair, zigzag_pair};
use dgtwist_core::twisted::{hom_bimodule, hom_complex, ChainMorphism, HomMatrix, HomSpace, TCBimodule, TcMap, TwistedComplex, ZigZag};
use dgtwist_core::Field;

pub const SEED: u64 = 0x00d6_7715;
pub const CASES: u32 = 100;

fn runner(cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&SEED.to_le_bytes());
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

fn finish<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![3 => Just(Field::Rational), 1 => prop::sample::select(vec![2u64, 3, 5, 101]).prop_map(Field::Prime)]
}

fn rep(c: &Arc<DGCategory>, obj: usize, shift: i64) -> TwistedComplex {
    TwistedComplex::representable(c, obj % c.n_objects(), shift)
}

/// The glued category of `M = h^{o1}[s1]` and `N = h^{o2}[s2]` over `c`.
fn pair_context(c: &Arc<DGCategory>, o1: usize, s1: i64, o2: usize, s2: i64) -> GluedCategoryContext {
    let m = TCBimodule::of_tc(&rep(c, o1, s1));
    let n = TCBimodule::of_tc(&rep(c, o2, s2));
    GluedCategoryContext::new(n.left(), m.left(), hom_bimodule(&n, &m)).expect("hom bimodules glue")
}

fn base_category(f: Field) -> BoxedStrategy<Arc<DGCategory>> {
    prop_oneof![
        (1usize..3, -2i64..4).prop_map(move |(n, d)| truncated_polynomial(f, n, d)),
        Just(zigzag(f)),
        (-1i64..3).prop_map(move |d| kronecker(f, d)),
        (0i64..4).prop_map(move |s| trivial_extension(&Arc::new(kronecker(f, 0)), s)),
    ]
    .prop_map(Arc::new)
    .boxed()
}

/// Small categories from every constructor, composite ones included.
fn category(f: Field) -> BoxedStrategy<Arc<DGCategory>> {
    let base = base_category(f);
    prop_oneof![
        4 => base.clone(),
        1 => base.clone().prop_map(|c| Arc::new(opposite(&c))),
        1 => (1usize..3, 0i64..3, 1usize..3, -1i64..3)
            .prop_map(move |(n, d, m, e)| Arc::new(tensor_cat(&truncated_polynomial(f, n, d), &truncated_polynomial(f, m, e)))),
        1 => (base, 0usize..2, -1i64..2, 0usize..2, -1i64..2).prop_map(|(c, o1, s1, o2, s2)| pair_context(&c, o1, s1, o2, s2).r),
    ]
    .boxed()
}

#[derive(Clone, Debug)]
enum Op {
    Shift(i64),
    Sum(usize, i64),
    /// Cone of a random closed degree-0 map into `h^o[s]`.
    Cone(usize, i64, Vec<i64>),
    /// Cone of a random closed degree-0 endomorphism.
    SelfCone(Vec<i64>),
}

fn op() -> impl Strategy<Value = Op> {
    let coeffs = prop::collection::vec(-2i64..3, 4);
    prop_oneof![
        (-2i64..3).prop_map(Op::Shift),
        (0usize..3, -2i64..3).prop_map(|(o, s)| Op::Sum(o, s)),
        (0usize..3, -2i64..3, coeffs.clone()).prop_map(|(o, s, c)| Op::Cone(o, s, c)),
        coeffs.prop_map(Op::SelfCone),
    ]
}

/// A closed degree-0 map `x → y`: an integer combination of homology
/// representatives of `Hom(x, y)` in degree 0.
fn closed_map(x: &TwistedComplex, y: &TwistedComplex, coeffs: &[i64]) -> ChainMorphism {
    let h = hom_complex(x, y).homology();
    let f = x.field();
    let mut v = Vec::new();
    for (z, c) in h.reps(0).iter().zip(coeffs) {
        v = axpy(&v, &f.int(*c), z);
    }
    ChainMorphism::new(x.clone(), y.clone(), 0, HomSpace::new(x, y).unflatten(&v)).expect("cycles have degree 0")
}

/// The target of a cone step, if `op` is one.
fn cone_target(x: &TwistedComplex, op: &Op) -> Option<(TwistedComplex, Vec<i64>)> {
    match op {
        Op::Cone(o, s, k) => Some((rep(x.cat(), *o, *s), k.clone())),
        Op::SelfCone(k) => Some((x.clone(), k.clone())),
        _ => None,
    }
}

fn apply(x: &TwistedComplex, op: &Op) -> TwistedComplex {
    match op {
        Op::Shift(s) => x.shift(*s),
        Op::Sum(o, s) => x.direct_sum(&rep(x.cat(), *o, *s)),
        _ => {
            let (y, k) = cone_target(x, op).unwrap();
            closed_map(x, &y, &k).cone().expect("closed maps have cones")
        }
    }
}

/// Applies `ops` in turn while the complex stays small, returning every
/// stage. Stage `i + 1` is `ops[i]` applied to stage `i`.
fn build(c: &Arc<DGCategory>, o: usize, s: i64, ops: &[Op]) -> Vec<TwistedComplex> {
    let mut out = vec![rep(c, o, s)];
    for op in ops {
        let next = apply(out.last().unwrap(), op);
        if next.len() > 5 {
            break;
        }
        out.push(next);
    }
    out
}

fn complex_case(max_ops: usize) -> impl Strategy<Value = (Arc<DGCategory>, usize, i64, Vec<Op>)> {
    field().prop_flat_map(move |f| (category(f), 0usize..3, -1i64..2, prop::collection::vec(op(), 0..=max_ops)))
}

/// Every stage satisfies the Maurer–Cartan equation, and each cone has the
/// Euler characteristic `χ(y) - χ(x)` at every object. Bimodule shift, sum,
/// tensor with the diagonal and dual keep the result valid.
pub fn maurer_cartan_closure(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&complex_case(4), |(c, o, s, ops)| {
        let xs = build(&c, o, s, &ops);
        for x in &xs {
            let v = x.validate();
            prop_assert!(v.passed(), "{:?}", v.violations);
        }
        for (x, op) in xs.iter().zip(&ops) {
            let Some((y, k)) = cone_target(x, op) else {
                continue;
            };
            let cone = closed_map(x, &y, &k).cone().unwrap();
            for ob in 0..c.n_objects() {
                prop_assert_eq!(cone.homology_at(ob).euler(), y.homology_at(ob).euler() - x.homology_at(ob).euler());
            }
        }
        let last = TCBimodule::of_tc(xs.last().unwrap());
        let diag = TCBimodule::diagonal(&c);
        for m in [last.shift(1), last.direct_sum(&last), last.tensor(&diag), last.dual()] {
            let v = m.validate();
            prop_assert!(v.passed(), "{:?}", v.violations);
        }
        Ok(())
    }))
}

/// A homogeneous element of degree `p` in `sp` with small coefficients, or
/// `None` if that degree is empty.
fn element(sp: &HomSpace, p: i64, coeffs: &[i64], f: Field) -> Option<HomMatrix> {
    let idx: Vec<usize> = sp.degs().iter().enumerate().filter(|(_, d)| **d == p).map(|(i, _)| i).collect();
    if idx.is_empty() {
        return None;
    }
    let v: Vec<_> = idx.iter().zip(coeffs.iter().cycle()).filter(|(_, c)| **c != 0).map(|(i, c)| (*i, f.int(*c))).collect();
    Some(sp.unflatten(&v))
}

/// `d² = 0`, Leibniz, associativity and units on constructed categories and
/// their opposites, and `d(g∘f) = dg∘f + (-1)^{|g|} g∘df` for morphisms of
/// random twisted complexes.
pub fn category_axioms(cases: u32) -> Result<(), String> {
    let case = (complex_case(2), -2i64..3, -2i64..3, prop::collection::vec(-2i64..3, 3));
    finish(runner(cases).run(&case, |((c, o, s, ops), p, q, k)| {
        let v = c.validate();
        prop_assert!(v.passed(), "{}: {:?}", c.name(), v.violations);
        let v = opposite(&c).validate();
        prop_assert!(v.passed(), "{}^op: {:?}", c.name(), v.violations);
        let xs = build(&c, o, s, &ops);
        let x = xs.last().unwrap();
        let h = hom_complex(x, x);
        prop_assert!(h.d().compose(h.d()).is_zero());
        let sp = HomSpace::new(x, x);
        let fld = c.field();
        let (Some(g), Some(f)) = (element(&sp, p, &k, fld), element(&sp, q, &k[1..], fld)) else {
            return Ok(());
        };
        let g = ChainMorphism::new(x.clone(), x.clone(), p, g).unwrap();
        let f = ChainMorphism::new(x.clone(), x.clone(), q, f).unwrap();
        let lhs = g.compose(&f).differential().matrix;
        let rhs = g.differential().compose(&f).matrix.axpy(&fld.one().signed(p), &g.compose(&f.differential()).matrix);
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))
}

fn catalogue_module() -> impl Strategy<Value = TCBimodule> {
    let q = Field::Rational;
    let cats = prop_oneof![
        Just(Arc::new(truncated_polynomial(q, 1, 2))),
        Just(Arc::new(truncated_polynomial(q, 2, 2))),
        Just(Arc::new(zigzag(q))),
        Just(Arc::new(kronecker(q, 0))),
    ];
    (cats, 0usize..2, -1i64..2, prop::collection::vec(op(), 0..=2), any::<bool>()).prop_map(|(c, o, s, ops, diag)| {
        if diag {
            TCBimodule::diagonal(&c).shift(s)
        } else {
            TCBimodule::of_tc(build(&c, o, s, &ops).last().unwrap())
        }
    })
}

/// `M^∨∨` has the generators and homology of `M`, and the zig-zag
/// `M → M ⊗ M^∨ ⊗ M → M` is the identity.
pub fn duality_identities(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&catalogue_module(), |m| {
        let dd = m.dual().dual().rebased(m.left(), m.right()).unwrap();
        prop_assert!(dd.validate().passed());
        for (a, b) in m.comps().iter().zip(dd.comps()) {
            prop_assert_eq!(a.shifts(), b.shifts());
            prop_assert_eq!(a.homology_dims(), b.homology_dims());
        }
        let z = ZigZag::new(&m).unwrap();
        prop_assert!(z.coact.check(&m, &z.middle).passed());
        prop_assert!(z.eval.check(&z.middle, &m).passed());
        prop_assert_eq!(z.composite(&m), TcMap::identity(&m));
        Ok(())
    }))
}

fn context() -> impl Strategy<Value = GluedCategoryContext> {
    let q = Field::Rational;
    let k = Arc::new(truncated_polynomial(q, 1, 2));
    prop_oneof![
        Just(kronecker_context(q)),
        Just(GluedCategoryContext::new(&k, &k, Bimod::diagonal(&k)).unwrap()),
        (base_category(q), 0usize..2, -1i64..2, 0usize..2, -1i64..2).prop_map(|(c, o1, s1, o2, s2)| pair_context(&c, o1, s1, o2, s2)),
    ]
}

/// The gluing hom identities and the three adjunctions hold as equalities
/// of graded dimensions.
pub fn adjunction_dims(cases: u32) -> Result<(), String> {
    let case = (context(), 0usize..2, -2i64..3, 0usize..2, -2i64..3);
    finish(runner(cases).run(&case, |(ctx, a, s, b, t)| {
        let x = rep(&ctx.a, a, s);
        let y = rep(&ctx.b, b, t);
        let r = check_gluing_hom_identities(&ctx, &x, &y).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
        let (xm, ym) = (TCBimodule::of_tc(&x), TCBimodule::of_tc(&y));
        for f in [ind_a(&ctx, &xm.shift(1)), res_proj_a(&ctx, &xm), ind_b(&ctx, &ym)] {
            let r = check_adjunctions(&ctx, &x, &y, &f).unwrap();
            prop_assert!(r.passed(), "{:?}", r);
        }
        Ok(())
    }))
}

/// Reports depend only on their inputs and the seed.
pub fn report_determinism(cases: u32) -> Result<(), String> {
    let q = Field::Rational;
    let data: Vec<_> = [kt2_pair(q), zigzag_pair(q), zero_pair(q)].iter().map(|p| glue_spherical(&p.m, &p.n).unwrap()).collect();
    let e = rep(&Arc::new(zigzag(q)), 0, 0);
    finish(runner(cases).run(&(0usize..3, any::<u64>()), |(k, seed)| {
        prop_assert_eq!(glued_twist(&data[k], seed).unwrap().report, glued_twist(&data[k], seed).unwrap().report);
        prop_assert_eq!(check_spherical_object(&e, 2, seed), check_spherical_object(&e, 2, seed));
        Ok(())
    }))
}

pub type Property = fn(u32) -> Result<(), String>;

pub const ALL: [(&str, Property); 5] = [
    ("Maurer-Cartan closure", maurer_cartan_closure),
    ("d^2 = 0 and Leibniz", category_axioms),
    ("double dual and zig-zag", duality_identities),
    ("adjunction dimensions", adjunction_dims),
    ("report determinism", report_determinism),
];
