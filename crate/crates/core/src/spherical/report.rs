use serde::Serialize;

use crate::exactlinalg::GradedVectorSpace;
use crate::twisted::{Certificate, QisoSearch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn meet(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        }
    }
}

/// A homology table row: where it was measured and the graded dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyRow {
    pub label: String,
    pub dims: GradedVectorSpace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl Check {
    pub fn new(name: &str, status: Status, detail: impl Into<String>) -> Check {
        Check { name: name.into(), status, detail: detail.into(), certificate: None }
    }

    pub fn equal<T: PartialEq + std::fmt::Debug>(name: &str, lhs: &T, rhs: &T) -> Check {
        let detail = if lhs == rhs { format!("{lhs:?}") } else { format!("{lhs:?} != {rhs:?}") };
        Check::new(name, Status::of(lhs == rhs), detail)
    }

    /// Graded dimensions compared entrywise, shown as `{deg:dim}` lists.
    pub fn same_dims(name: &str, lhs: &[GradedVectorSpace], rhs: &[GradedVectorSpace]) -> Check {
        let show = |v: &[GradedVectorSpace]| v.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ");
        let detail = if lhs == rhs { show(lhs) } else { format!("{} != {}", show(lhs), show(rhs)) };
        Check::new(name, Status::of(lhs == rhs), detail)
    }

    /// A search that found nothing is inconclusive, never a failure.
    pub fn search<M>(name: &str, s: &QisoSearch<M>) -> Check {
        match s {
            QisoSearch::Found { cert, .. } => Check {
                name: name.into(),
                status: Status::Pass,
                detail: format!("{} map, attempt {}", cert.method, cert.attempt),
                certificate: Some(cert.clone()),
            },
            QisoSearch::Inconclusive { attempts, closed_dim } => Check::new(
                name,
                Status::Inconclusive,
                format!("no quasi-isomorphism among {attempts} candidates ({closed_dim}-dimensional closed space)"),
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub homology: Vec<HomologyRow>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn row(&mut self, label: impl Into<String>, dims: GradedVectorSpace) {
        self.homology.push(HomologyRow { label: label.into(), dims });
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
        for mut r in other.homology {
            r.label = format!("{prefix}.{}", r.label);
            self.homology.push(r);
        }
    }

    pub fn status(&self) -> Status {
        self.checks.iter().fold(Status::Pass, |s, c| s.meet(c.status))
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }
}
