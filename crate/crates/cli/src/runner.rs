//! Executes scenario tasks in order and collects a [`RunReport`].

use std::sync::Arc;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use dgtwist_core::dgcat::DGCategory;
use dgtwist_core::glued::{
    check_adjunctions, check_gluing_hom_identities, ind_a, ind_b, res_proj_a, sod_project, GluedCategoryContext, HomIdentityReport,
};
use dgtwist_core::spherical::{
    check_p_object, check_spherical_object, cotwist_matrix, degenerate_gluing_check, glued_twist, p_prime, p_prime_cotwist_check,
    p_prime_serre_table, serre_shift_check, spherical_certificates, verify_commutativity, Check, CotwistKind, Report, Status,
};
use dgtwist_core::twisted::{hom_complex, with_attempt_budget, TCBimodule, TwistedComplex};
use dgtwist_core::{Field, GradedVectorSpace};

use crate::build::Workspace;
use crate::report::{ReportBody, RunMeta, RunReport, TaskReport, TaskTiming};
use crate::scenario::{CheckKind, Scenario, TaskDef};

/// Command-line overrides of the scenario's own settings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub field: Option<Field>,
    pub seed: Option<u64>,
    pub attempts: Option<usize>,
}

pub fn run(s: &Scenario, opts: RunOptions) -> Result<RunReport, String> {
    let field = opts.field.unwrap_or_else(|| s.field());
    let seed = opts.seed.unwrap_or(s.seed);
    let attempts = opts.attempts.unwrap_or(s.attempts);
    let ws = Workspace::build(s, field).map_err(|e| e.message)?;
    let start = Instant::now();
    let mut tasks = Vec::with_capacity(s.tasks.len());
    let mut timings = Vec::with_capacity(s.tasks.len());
    let mut aborted = false;
    with_attempt_budget(attempts, || {
        for t in &s.tasks {
            let t = t.get_ref();
            let name = t.display_name();
            let over = s.time_budget_s.is_some_and(|b| start.elapsed().as_secs_f64() > b);
            let t0 = Instant::now();
            let report = if over {
                aborted = true;
                let mut r = Report::default();
                r.push(Check::new("time budget", Status::Inconclusive, "not started: time budget exhausted"));
                r
            } else {
                run_task(s, &ws, t, seed).unwrap_or_else(|e| {
                    let mut r = Report::default();
                    r.push(Check::new("error", Status::Fail, e));
                    r
                })
            };
            timings.push(TaskTiming { task: name.clone(), ms: t0.elapsed().as_secs_f64() * 1e3 });
            tasks.push(TaskReport::new(name, t, report));
        }
    });
    let timestamp_unix = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    Ok(RunReport::new(ReportBody::new(s.name.clone(), field, seed, attempts, tasks), RunMeta { timestamp_unix, timings, aborted }))
}

fn tc_of<'a>(ws: &'a Workspace, t: &TaskDef) -> Result<&'a TwistedComplex, String> {
    let name = t.module.as_ref().expect("validated");
    ws.module(name).tc.as_ref().ok_or_else(|| format!("`{}` is not a twisted complex", name.get_ref()))
}

fn dims_check(t: &TaskDef, got: &GradedVectorSpace) -> Option<Check> {
    let want = GradedVectorSpace::from_pairs(t.expected_dims()?);
    Some(Check::same_dims("expected dims", std::slice::from_ref(got), std::slice::from_ref(&want)))
}

fn category_rows(r: &mut Report, c: &DGCategory) -> GradedVectorSpace {
    let mut total = GradedVectorSpace::zero();
    for x in 0..c.n_objects() {
        for y in 0..c.n_objects() {
            let h = c.hom_homology(x, y);
            total = total.sum(&h);
            r.row(format!("Hom({}, {})", c.objects()[x], c.objects()[y]), h);
        }
    }
    r.row("total", total.clone());
    total
}

fn run_task(s: &Scenario, ws: &Workspace, t: &TaskDef, seed: u64) -> Result<Report, String> {
    let pair = || ws.pair(s, t.pair.as_ref().expect("validated").get_ref());
    let mut r = Report::default();
    match t.check {
        CheckKind::Homology => {
            let total = if let Some(c) = &t.category {
                let cat = ws.category(c);
                r.push(Check::new("valid", Status::of(cat.validate().passed()), cat.name()));
                category_rows(&mut r, cat)
            } else {
                let e = tc_of(ws, t)?;
                let m = t.module.as_ref().expect("validated").get_ref();
                r.push(Check::new("valid", Status::of(e.validate().passed()), format!("{} generators", e.len())));
                for (o, name) in e.cat().objects().iter().enumerate() {
                    r.row(format!("{m}({name})"), e.homology_at(o));
                }
                let (label, h) = match &t.target {
                    Some(tg) => {
                        let f = tc_of(ws, &TaskDef { module: Some(tg.clone()), ..TaskDef::new(t.check) })?;
                        (format!("Hom({m}, {})", tg.get_ref()), hom_complex(e, f).homology_dims())
                    }
                    None => (format!("End({m})"), hom_complex(e, e).homology_dims()),
                };
                r.row(label, h.clone());
                h
            };
            r.checks.extend(dims_check(t, &total));
        }
        CheckKind::Glue => {
            let (d, _) = pair()?;
            r.extend("datum", d.validate());
            r.push(Check::new("R is a dg-category", Status::of(d.ctx.r.validate().passed()), d.ctx.r.name()));
            let total = category_rows(&mut r, &d.ctx.r);
            r.checks.extend(dims_check(t, &total));
        }
        CheckKind::SphericalObject => {
            let e = tc_of(ws, t)?;
            let o = check_spherical_object(e, t.d.unwrap_or(2), seed);
            r = o.report;
            r.row("End", o.end_dims);
        }
        CheckKind::PObject => {
            let o = check_p_object(tc_of(ws, t)?, t.n.expect("validated"), seed);
            r = o.report;
            r.row("End", o.end_dims);
        }
        CheckKind::PPrimeCotwist => {
            let pp = p_prime(tc_of(ws, t)?, None).map_err(|e| e.to_string())?;
            r.push(Check::new("t is nonzero in homology", Status::of(!pp.degenerate), ""));
            r.push(p_prime_cotwist_check(&pp.bimodule, t.n.expect("validated"), seed));
        }
        CheckKind::Composition => r = glued_twist(&pair()?.0, seed).map_err(|e| e.to_string())?.report,
        CheckKind::CotwistMatrix => r = cotwist_matrix(&pair()?.0, seed).report,
        CheckKind::CotwistSerre => {
            let (datum, pd) = pair()?;
            let d = t.d.or(pd).ok_or("task `cotwist-serre` needs `d` on the task or its pair")?;
            r = serre_shift_check(&datum, d, seed).report;
        }
        CheckKind::PPrimeSerre => r = p_prime_serre_table(&pair()?.0, t.n.expect("validated")),
        CheckKind::Certificates => {
            let (datum, pd) = pair()?;
            let kind = match (t.d.or(pd), t.shift) {
                (_, Some(shift)) => CotwistKind::Shift { shift },
                (Some(d), None) => CotwistKind::Serre { d },
                (None, None) => CotwistKind::Unknown,
            };
            r = spherical_certificates(&datum, kind, seed).map_err(|e| e.to_string())?;
        }
        CheckKind::Commutativity => {
            let (datum, _) = pair()?;
            r = verify_commutativity(&datum.m, &datum.n, seed).map_err(|e| e.to_string())?;
        }
        CheckKind::Degenerate => {
            let (datum, _) = pair()?;
            r.push(Check::equal("M is zero", &datum.m.comps().iter().all(|c| c.is_empty()), &true));
            r.push(degenerate_gluing_check(&datum, seed).map_err(|e| e.to_string())?);
        }
        CheckKind::Sod => {
            let ctx = ws.context(s, t.context.as_ref().expect("validated").get_ref())?;
            r = sod_report(&ctx).map_err(|e| e.to_string())?;
        }
    }
    Ok(r)
}

fn push_identities(r: &mut Report, prefix: &str, h: HomIdentityReport) {
    for c in h.checks {
        r.push(Check::same_dims(&format!("{prefix}{}", c.name), &[c.lhs.clone()], &[c.rhs]));
        r.row(format!("{prefix}{}", c.name), c.lhs);
    }
}

/// Hom identities, adjunctions and both projection triangles, tested on the
/// first representables of `A` and `B`.
fn sod_report(ctx: &GluedCategoryContext) -> Result<Report, dgtwist_core::glued::GluedError> {
    let mut r = Report::default();
    let rep = |c: &Arc<DGCategory>| TwistedComplex::representable(c, 0, 0);
    let (x, y) = (rep(&ctx.a), rep(&ctx.b));
    push_identities(&mut r, "", check_gluing_hom_identities(ctx, &x, &y)?);
    let (xm, ym) = (TCBimodule::of_tc(&x), TCBimodule::of_tc(&y));
    for (label, f) in [("Ind_A X", ind_a(ctx, &xm)), ("Ind_B Y", ind_b(ctx, &ym)), ("Res X", res_proj_a(ctx, &xm))] {
        let p = sod_project(ctx, &f)?;
        r.push(Check::equal(&format!("{label}: Ind_A triangle"), &p.ind_a_triangle, &true));
        r.push(Check::equal(&format!("{label}: Ind_B triangle"), &p.ind_b_triangle, &true));
        let adj = check_adjunctions(ctx, &x, &y, &f)?;
        for c in adj.checks {
            r.push(Check::same_dims(&format!("{label}: {}", c.name), &[c.lhs], &[c.rhs]));
        }
    }
    Ok(r)
}
