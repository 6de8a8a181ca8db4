//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Dimensions are compared exactly; certificates must be found.

#[path = "support/properties.rs"]
mod properties;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dgtwist_core::dgcat::DGCategory;
use dgtwist_core::glued::{check_gluing_hom_identities, hom_r, ind_a, ind_b, kronecker_context, res_proj_a, sod_project};
use dgtwist_core::spherical::*;
use dgtwist_core::twisted::{hom_complex, TCBimodule, TwistedComplex};
use dgtwist_core::{Field, GradedVectorSpace};

const Q: Field = Field::Rational;

type Outcome = Result<(), String>;

fn gv(p: &[(i64, usize)]) -> GradedVectorSpace {
    GradedVectorSpace::from_pairs(p.iter().copied())
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn same(what: &str, got: &GradedVectorSpace, want: &GradedVectorSpace) -> Outcome {
    ensure(got == want, || format!("{what}: got {got:?}, want {want:?}"))
}

fn passed(what: &str, r: &Report) -> Outcome {
    let failing: Vec<_> = r.checks.iter().filter(|c| c.status != Status::Pass).map(|c| format!("{} ({:?})", c.name, c.status)).collect();
    ensure(failing.is_empty(), || format!("{what}: {}", failing.join(", ")))
}

/// Brute-force oracle, independent of the library's elimination: rank of an
/// integer matrix by fraction-free (Bareiss) elimination in `i128`.
fn bareiss_rank(mut a: Vec<Vec<i128>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let (mut rank, mut prev) = (0, 1i128);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

/// `H(hom_C(x, y))` from the raw basis degrees and differential.
fn oracle_hom_homology(c: &DGCategory, x: usize, y: usize) -> GradedVectorSpace {
    let degs = c.hom_degs(x, y);
    let d = c.diff(x, y);
    let int = |i: usize, j: usize| -> i128 { d.entry(i, j).to_i64().expect("integral differential").into() };
    let block = |p: i64| -> Vec<Vec<i128>> {
        let src: Vec<usize> = (0..degs.len()).filter(|&j| degs[j] == p).collect();
        let tgt: Vec<usize> = (0..degs.len()).filter(|&i| degs[i] == p + 1).collect();
        tgt.iter().map(|&i| src.iter().map(|&j| int(i, j)).collect()).collect()
    };
    let mut out = Vec::new();
    for &p in degs.iter().collect::<std::collections::BTreeSet<_>>() {
        let n = degs.iter().filter(|&&q| q == p).count();
        out.push((p, n - bareiss_rank(block(p)) - bareiss_rank(block(p - 1))));
    }
    GradedVectorSpace::from_pairs(out)
}

/// `Hom(h^x[s], h^y[t]) = hom(x, y)[t - s]`.
fn oracle_rep_hom(c: &DGCategory, (x, s): (usize, i64), (y, t): (usize, i64)) -> GradedVectorSpace {
    oracle_hom_homology(c, x, y).shift(t - s)
}

fn rep_of(m: &TCBimodule) -> (usize, i64) {
    let g = &m.comp(0).gens()[0];
    (g.obj, g.shift)
}

fn datum(p: &Pair) -> GluedSphericalDatum {
    glue_spherical(&p.m, &p.n).expect("catalogue pairs glue")
}

fn criterion_1() -> Outcome {
    let c = kt2(Q);
    let e = TwistedComplex::representable(&c, 0, 0);
    let r = check_spherical_object(&e, 2, 0);
    same("End(E)", &r.end_dims, &gv(&[(0, 1), (2, 1)]))?;
    same("End(E) oracle", &r.end_dims, &oracle_hom_homology(&c, 0, 0))?;
    passed("spherical object", &r.report)?;
    let serre = r.report.checks.iter().find(|c| c.name == "Serre condition").ok_or("no Serre check")?;
    let cert = serre.certificate.as_ref().ok_or("no Serre certificate")?;
    ensure(cert.seed == 0 && cert.attempt < 16, || format!("certificate at attempt {} with seed {}", cert.attempt, cert.seed))
}

fn criterion_2() -> Outcome {
    let p = kt2_pair(Q);
    let r = datum(&p).ctx.r;
    passed("kt2 datum", &datum(&p).validate())?;
    let table = [(0, 0, gv(&[(0, 1)])), (0, 1, gv(&[(0, 1), (2, 1)])), (1, 1, gv(&[(0, 1)])), (1, 0, gv(&[]))];
    for (x, y, want) in &table {
        same(&format!("kt2 R({x}, {y})"), &r.hom_homology(*x, *y), want)?;
    }
    // The cross term is Hom_C(N, M).
    same("kt2 cross oracle", &r.hom_homology(0, 1), &oracle_rep_hom(p.m.right(), rep_of(&p.n), rep_of(&p.m)))?;

    let z = zigzag_pair(Q);
    let r = datum(&z).ctx.r;
    passed("zigzag datum", &datum(&z).validate())?;
    let table = [(0, 0, gv(&[(0, 1)])), (0, 1, gv(&[(0, 2)])), (1, 1, gv(&[(0, 1)])), (1, 0, gv(&[]))];
    for (x, y, want) in &table {
        same(&format!("zigzag R({x}, {y})"), &r.hom_homology(*x, *y), want)?;
    }
    same("zigzag cross oracle", &r.hom_homology(0, 1), &oracle_rep_hom(z.m.right(), rep_of(&z.n), rep_of(&z.m)))?;
    let total: usize = table.iter().map(|(_, _, v)| v.total()).sum();
    ensure(total == 4, || format!("zigzag total {total}"))
}

fn criterion_3() -> Outcome {
    for p in [kt2_pair(Q), zigzag_pair(Q)] {
        let d = datum(&p);
        let t = glued_twist(&d, 0).map_err(|e| e.to_string())?;
        passed(&p.name, &t.report)?;
        // Independent of the report: every object, every degree.
        let c = d.c();
        for o in 0..c.n_objects() {
            let h = TwistedComplex::representable(c, o, 0);
            let it = iterated_twist(&p.m, &p.n, &h).map_err(|e| e.to_string())?;
            ensure(t.first_principles.comp(o).homology_dims() == it.homology_dims(), || {
                format!("{}: glued twist on h^{} differs from T_N(T_M(h))", p.name, c.objects()[o])
            })?;
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for p in [kt2_pair(Q), zigzag_pair(Q)] {
        let d = datum(&p);
        let c = cotwist_matrix(&d, 0);
        passed(&p.name, &c.report)?;
        let hom_mn = hom_complex(p.m.comp(0), p.n.comp(0)).homology_dims();
        // Hom•(M, N)[-1]
        same(&format!("{} off-diagonal", p.name), &c.matrix.slot(0, 1).homology_dims(), &hom_mn.shift(-1))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for p in [kt2_pair(Q), zigzag_pair(Q)] {
        let d = datum(&p);
        let s = serre_shift_check(&d, 2, 0);
        let slotwise = s.report.checks.iter().find(|c| c.name == "slotwise homology").ok_or("no slotwise check")?;
        ensure(slotwise.status == Status::Pass, || format!("{}: slotwise homology differs", p.name))?;
        passed(&p.name, &s.report)?;
        let method = s.search.certificate().map(|c| c.method.as_str());
        ensure(method == Some("serre-pairing"), || format!("{}: certified by {method:?}", p.name))?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let p = zigzag_pair(Q);
    let r = verify_commutativity(&p.m, &p.n, 0).map_err(|e| e.to_string())?;
    ensure(r.checks.len() == 1 + p.m.right().n_objects(), || "missing representables".into())?;
    passed("commutativity", &r)
}

fn criterion_7() -> Outcome {
    let d = datum(&zero_pair(Q));
    let c = degenerate_gluing_check(&d, 0).map_err(|e| e.to_string())?;
    ensure(c.status == Status::Pass && c.certificate.is_some(), || format!("glued twist ~ T_N: {:?}", c.status))?;
    passed("zero pair twist", &glued_twist(&d, 0).map_err(|e| e.to_string())?.report)
}

fn criterion_8() -> Outcome {
    for n in 1..=2usize {
        let p = p_object(Q, n);
        let r = check_p_object(&p, n, 0);
        same(&format!("End(P), n = {n}"), &r.end_dims, &oracle_hom_homology(p.cat(), 0, 0))?;
        passed(&format!("P-object n = {n}"), &r.report)?;
        let pp = p_prime(&p, None).map_err(|e| e.to_string())?;
        ensure(!pp.degenerate, || format!("P' degenerate for n = {n}"))?;
        let c = p_prime_cotwist_check(&pp.bimodule, n, 0);
        ensure(c.status == Status::Pass, || format!("cotwist of P' ~ [-{}]: {:?}", 2 * n + 2, c.status))?;
        let d = datum(&p_prime_pair(Q, n));
        passed(&format!("P' gluing n = {n}"), &glued_twist(&d, 0).map_err(|e| e.to_string())?.report)?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let ctx = kronecker_context(Q);
    let x = TwistedComplex::representable(&ctx.a, 0, 0);
    let y = TwistedComplex::representable(&ctx.b, 0, 0);
    let r = check_gluing_hom_identities(&ctx, &x, &y).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("{r:?}"))?;
    let (ha, hb) = (TCBimodule::of_tc(&x), TCBimodule::of_tc(&y));
    let (p1, p2, s1) = (ind_a(&ctx, &ha), ind_b(&ctx, &hb), res_proj_a(&ctx, &ha));
    let h = |f, g| hom_r(&ctx, f, g).map(|c| c.homology_dims()).map_err(|e| e.to_string());
    same("Hom(P2, P1)", &h(&p2, &p1)?, &gv(&[(0, 2)]))?;
    // S2 = P2 is the ind-side simple; S1 = Res is the res-side one.
    same("Hom(S2, S1)", &h(&p2, &s1)?, &gv(&[]))?;
    // Ext¹ between the simples is nonzero from S1 to S2 only, since S2 is projective.
    let s2_1 = ind_b(&ctx, &TCBimodule::of_tc(&y.shift(1)));
    let s1_1 = res_proj_a(&ctx, &TCBimodule::of_tc(&x.shift(1)));
    same("Hom(S1, S2[1])", &h(&s1, &s2_1)?, &gv(&[(0, 2)]))?;
    same("Hom(S2, S1[1])", &h(&p2, &s1_1)?, &gv(&[]))?;
    for (name, f) in [("P1", &p1), ("P2", &p2), ("S1", &s1)] {
        let s = sod_project(&ctx, f).map_err(|e| e.to_string())?;
        ensure(s.ind_a_triangle && s.ind_b_triangle, || format!("SOD triangles for {name}"))?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    for (name, prop) in properties::ALL {
        prop(properties::CASES).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("spherical object E over k[t]/t^2", criterion_1, 1),
        ("glued algebras of the kt2 and zigzag pairs", criterion_2, 5),
        ("composed twist by three routes", criterion_3, 30),
        ("cotwist matrix", criterion_4, 30),
        ("Serre-dual cotwist", criterion_5, 20),
        ("commutativity on the zigzag pair", criterion_6, 20),
        ("M = 0 degeneration", criterion_7, 5),
        ("P-objects and P' gluing", criterion_8, 30),
        ("SOD of the Kronecker gluing", criterion_9, 5),
        ("property suites", criterion_10, 30),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let dt = t.elapsed();
        let slow = if dt > Duration::from_secs(*budget) { format!(" (over the {budget} s budget)") } else { String::new() };
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name}  [{:.2} s{slow}]", i + 1, dt.as_secs_f64()),
            Err(e) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {name}  [{:.2} s{slow}]: {e}", i + 1, dt.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
