//! The versioned JSON report and its plain-text table rendering.
//!
//! A report has three parts: `schema`, a deterministic `body` that depends
//! only on the scenario, field, seed and attempt budget, and a `run` section
//! with the timestamp and timings. Two runs with the same inputs produce
//! byte-identical bodies.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use dgtwist_core::spherical::{Check, HomologyRow, Report, Status};
use dgtwist_core::Field;

use crate::scenario::{Expect, TaskDef};

pub const REPORT_SCHEMA: &str = "dgtwist-report/1";

/// Exit codes of the `dgtwist` binary.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INCONCLUSIVE: i32 = 3;
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaskReport {
    pub name: String,
    pub check: String,
    pub expect: Expect,
    pub status: Status,
    pub as_expected: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub homology: Vec<HomologyRow>,
}

impl TaskReport {
    pub fn new(name: String, t: &TaskDef, r: Report) -> TaskReport {
        let status = r.status();
        let as_expected = matches!(
            (t.expect, status),
            (Expect::Pass, Status::Pass) | (Expect::Fail, Status::Fail) | (Expect::Inconclusive, Status::Inconclusive)
        );
        TaskReport {
            name,
            check: t.check.label().to_string(),
            expect: t.expect,
            status,
            as_expected,
            checks: r.checks,
            homology: r.homology,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportBody {
    pub tool: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    pub field: String,
    pub seed: u64,
    pub attempts: usize,
    /// `pass` when every task met its expectation, `fail` when some task
    /// missed it with a definite answer, `inconclusive` otherwise.
    pub status: Status,
    pub tasks: Vec<TaskReport>,
}

impl ReportBody {
    pub fn new(scenario: Option<String>, field: Field, seed: u64, attempts: usize, tasks: Vec<TaskReport>) -> ReportBody {
        let status = tasks
            .iter()
            .filter(|t| !t.as_expected)
            .fold(Status::Pass, |acc, t| acc.meet(if t.status == Status::Inconclusive { Status::Inconclusive } else { Status::Fail }));
        ReportBody {
            tool: "dgtwist".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            scenario,
            field: field.label(),
            seed,
            attempts,
            status,
            tasks,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaskTiming {
    pub task: String,
    pub ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunMeta {
    pub timestamp_unix: u64,
    pub timings: Vec<TaskTiming>,
    /// The time budget ran out before every task started.
    pub aborted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: String,
    pub body: ReportBody,
    pub run: RunMeta,
}

impl RunReport {
    pub fn new(body: ReportBody, run: RunMeta) -> RunReport {
        RunReport { schema: REPORT_SCHEMA.into(), body, run }
    }

    pub fn exit_code(&self) -> i32 {
        match self.body.status {
            Status::Pass => exit::PASS,
            Status::Fail => exit::FAIL,
            Status::Inconclusive => exit::INCONCLUSIVE,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The deterministic part of the JSON document.
    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("reports serialize")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

pub fn emit_report(r: &RunReport, format: Format) -> String {
    match format {
        Format::Json => r.to_json(),
        Format::Table => table(r),
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Inconclusive => "inconclusive",
    }
}

fn expect_word(e: Expect) -> &'static str {
    match e {
        Expect::Pass => "pass",
        Expect::Fail => "fail",
        Expect::Inconclusive => "inconclusive",
    }
}

/// A homology table with one column per degree between the extremes, zero
/// entries shown as `.`, and a total column.
pub fn homology_table(rows: &[HomologyRow]) -> String {
    let degs: BTreeSet<i64> = rows.iter().flat_map(|r| r.dims.degrees()).collect();
    let (Some(&lo), Some(&hi)) = (degs.first(), degs.last()) else {
        let mut out = String::new();
        for r in rows {
            let _ = writeln!(out, "{}  (zero)", r.label);
        }
        return out;
    };
    let cols: Vec<i64> = (lo..=hi).collect();
    let lw = rows.iter().map(|r| r.label.chars().count()).max().unwrap_or(0).max(3);
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<String> =
                cols.iter().map(|&d| if r.dims.dim(d) == 0 { ".".into() } else { r.dims.dim(d).to_string() }).collect();
            v.push(r.dims.total().to_string());
            v
        })
        .collect();
    let mut heads: Vec<String> = cols.iter().map(|d| d.to_string()).collect();
    heads.push("total".into());
    let widths: Vec<usize> =
        (0..heads.len()).map(|j| cells.iter().map(|c| c[j].len()).chain([heads[j].len()]).max().unwrap_or(1)).collect();
    let mut out = String::new();
    let line = |label: &str, vals: &[String]| {
        let mut s = format!("{label:<lw$} |");
        for (v, w) in vals.iter().zip(&widths) {
            let _ = write!(s, " {v:>w$}");
        }
        s
    };
    let _ = writeln!(out, "{}", line("deg", &heads));
    for (r, c) in rows.iter().zip(&cells) {
        let _ = writeln!(out, "{}", line(&r.label, c));
    }
    out
}

fn table(r: &RunReport) -> String {
    let b = &r.body;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {}  scenario {}  field {}  seed {}  attempts {}",
        b.tool,
        b.version,
        b.scenario.as_deref().unwrap_or("-"),
        b.field,
        b.seed,
        b.attempts
    );
    if b.tasks.is_empty() {
        let _ = writeln!(out, "no tasks");
    }
    for t in &b.tasks {
        let mark = if t.as_expected { "ok" } else { "UNEXPECTED" };
        let _ =
            writeln!(out, "\n== {} [{}]  status {}  expected {}  {}", t.name, t.check, status_word(t.status), expect_word(t.expect), mark);
        for c in &t.checks {
            let _ = writeln!(out, "  {:<12} {}  {}", status_word(c.status), c.name, c.detail);
        }
        if !t.homology.is_empty() {
            for l in homology_table(&t.homology).lines() {
                let _ = writeln!(out, "  {l}");
            }
        }
    }
    let _ = writeln!(out, "\noverall {}", status_word(b.status));
    out
}
