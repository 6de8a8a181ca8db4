//! The bundled catalogue scenario and task lists built from flags.

use serde::Deserialize;
use toml::Spanned;

use crate::scenario::{line_col, ParseError, Scenario, TaskDef, Validator};

/// Definitions used by the single-check subcommands.
pub const CATALOGUE: &str = include_str!("../scenarios/catalogue.scn");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TaskList {
    #[serde(default)]
    tasks: Vec<Spanned<TaskDef>>,
}

/// `base` with its tasks replaced by the `[[tasks]]` of `snippet`, which
/// are validated against the definitions of `base`.
pub fn with_tasks(base: &Scenario, snippet: &str) -> Result<Scenario, ParseError> {
    let list: TaskList = toml::from_str(snippet).map_err(|e| {
        let (line, col) = e.span().map_or((1, 1), |r| line_col(snippet, r.start));
        ParseError { line, col, message: e.message().trim().to_string() }
    })?;
    let mut s = base.clone();
    s.tasks = list.tasks;
    let v = Validator { text: snippet };
    for t in &s.tasks {
        v.task(&s, t)?;
    }
    Ok(s)
}
