//! Scenario files: TOML documents naming categories, modules, spherical
//! pairs, glued contexts and an ordered task list.
//!
//! ```toml
//! format = "dgtwist-scenario/1"
//! name = "kt2"
//! field = "rational"          # or "prime:101"
//! seed = 0
//! attempts = 24
//!
//! [categories.kt2]
//! kind = "truncated-polynomial"
//! n = 1
//! deg = 2
//!
//! [modules.E]
//! category = "kt2"
//! gens = [{ obj = "*", shift = 0 }]
//!
//! [pairs.EE]
//! m = "E"
//! n = "E"
//! d = 2
//!
//! [[tasks]]
//! check = "composition"
//! pair = "EE"
//! ```
//!
//! The full grammar is described in the README. Sections are resolved in
//! the order categories, modules, pairs, contexts, tasks; a module may refer
//! to another module, and such references must not form a cycle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use dgtwist_core::Field;

pub const SCENARIO_FORMAT: &str = "dgtwist-scenario/1";
pub const DEFAULT_ATTEMPTS: usize = dgtwist_core::twisted::DEFAULT_ATTEMPTS;

/// A parse or validation error, located in the source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// 1-based line and column of a byte offset.
pub fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.chars().count(), |i| before[i + 1..].chars().count()) + 1;
    (line, col)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default = "default_format")]
    pub format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Spanned<String>>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_attempts")]
    pub attempts: usize,
    /// Wall-clock budget; tasks not started when it runs out are reported
    /// as inconclusive.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_budget_s: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub categories: BTreeMap<String, Spanned<CategoryDef>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, Spanned<ModuleDef>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pairs: BTreeMap<String, Spanned<PairDef>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub contexts: BTreeMap<String, Spanned<ContextDef>>,
    #[serde(default)]
    pub tasks: Vec<Spanned<TaskDef>>,
}

fn default_format() -> String {
    SCENARIO_FORMAT.to_string()
}

fn default_attempts() -> usize {
    DEFAULT_ATTEMPTS
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CategoryKind {
    Point,
    TruncatedPolynomial,
    DualNumbers,
    Zigzag,
    Kronecker,
    Quiver,
    Raw,
}

/// One category. Which optional fields are required depends on `kind`:
/// `truncated-polynomial` needs `n` and `deg`, `kronecker` takes an optional
/// arrow degree `deg`, `quiver` needs `vertices`, `arrows` and optionally
/// `relations` and `bound`, `raw` needs `objects`, `basis` and `units`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDef {
    pub kind: CategoryKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<Vec<ArrowDef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<PathTerm>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<BasisDef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compose: Option<Vec<CompositionDef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<Vec<DifferentialDef>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDef {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub deg: i64,
}

/// A coefficient: an integer or a string such as `"-2/3"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::Int(1)
    }
}

/// `coeff · path`, the path written as arrow names in the order traversed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathTerm {
    #[serde(default)]
    pub coeff: Coeff,
    pub path: String,
}

/// `coeff · elem` for a named basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    #[serde(default)]
    pub coeff: Coeff,
    pub elem: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDef {
    pub src: String,
    pub tgt: String,
    pub name: String,
    pub deg: i64,
}

/// `g ∘ f = value`; compositions with units are filled in automatically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionDef {
    pub g: String,
    pub f: String,
    #[serde(default)]
    pub value: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialDef {
    pub of: String,
    #[serde(default)]
    pub value: Vec<Term>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleKind {
    /// A twisted complex over `category`.
    #[default]
    Twisted,
    /// `P' = cone(t: P[-2] → P)` over `k[ε]/ε²`, built from the module `of`.
    PPrime,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDef {
    #[serde(default)]
    pub kind: ModuleKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<Spanned<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gens: Option<Vec<GenDef>>,
    /// Twisting matrix entries `δ[to][from]`, indices into `gens`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<DeltaDef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub of: Option<Spanned<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenDef {
    pub obj: String,
    #[serde(default)]
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaDef {
    pub from: usize,
    pub to: usize,
    pub value: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDef {
    pub m: Spanned<String>,
    pub n: Spanned<String>,
    /// Sphericity degree of both constituents, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContextKind {
    Kronecker,
    /// The glued category of a spherical pair.
    Pair,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextDef {
    pub kind: ContextKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<Spanned<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Homology,
    Glue,
    SphericalObject,
    PObject,
    PPrimeCotwist,
    Composition,
    CotwistMatrix,
    CotwistSerre,
    PPrimeSerre,
    Certificates,
    Commutativity,
    Degenerate,
    Sod,
}

impl CheckKind {
    pub fn label(self) -> &'static str {
        match self {
            CheckKind::Homology => "homology",
            CheckKind::Glue => "glue",
            CheckKind::SphericalObject => "spherical-object",
            CheckKind::PObject => "p-object",
            CheckKind::PPrimeCotwist => "p-prime-cotwist",
            CheckKind::Composition => "composition",
            CheckKind::CotwistMatrix => "cotwist-matrix",
            CheckKind::CotwistSerre => "cotwist-serre",
            CheckKind::PPrimeSerre => "p-prime-serre",
            CheckKind::Certificates => "certificates",
            CheckKind::Commutativity => "commutativity",
            CheckKind::Degenerate => "degenerate",
            CheckKind::Sod => "sod",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    #[default]
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskDef {
    pub check: CheckKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<Spanned<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Spanned<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<Spanned<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<Spanned<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<Spanned<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Expected cotwist shift for `certificates` on non-Serre pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<i64>,
    /// Expected homology of the task's total row, keyed by degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Spanned<BTreeMap<String, usize>>>,
    #[serde(default)]
    pub expect: Expect,
}

impl TaskDef {
    pub fn new(check: CheckKind) -> TaskDef {
        TaskDef {
            check,
            name: None,
            module: None,
            target: None,
            category: None,
            pair: None,
            context: None,
            d: None,
            n: None,
            shift: None,
            dims: None,
            expect: Expect::Pass,
        }
    }

    /// The display name: `name` if given, otherwise the check and its
    /// first argument.
    pub fn display_name(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        let arg = [&self.pair, &self.module, &self.category, &self.context].into_iter().flatten().next();
        match arg {
            Some(a) => format!("{}:{}", self.check.label(), a.get_ref()),
            None => self.check.label().to_string(),
        }
    }

    /// Expected dimensions as `(degree, dim)` pairs.
    pub fn expected_dims(&self) -> Option<Vec<(i64, usize)>> {
        self.dims.as_ref().map(|d| d.get_ref().iter().filter_map(|(k, v)| k.parse().ok().map(|k| (k, *v))).collect())
    }
}

/// Parses `"rational"`, `"Q"`, `"prime:p"` or `"F_p"`.
pub fn parse_field(s: &str) -> Result<Field, String> {
    let s = s.trim();
    match s {
        "rational" | "Q" | "q" => return Ok(Field::Rational),
        _ => {}
    }
    let p = s.strip_prefix("prime:").or_else(|| s.strip_prefix("F_")).ok_or_else(|| format!("unknown field `{s}`"))?;
    let p: u64 = p.parse().map_err(|_| format!("malformed prime in field `{s}`"))?;
    Field::prime(p).map_err(|e| format!("field `{s}`: {e}"))
}

impl Scenario {
    pub fn empty() -> Scenario {
        Scenario {
            format: default_format(),
            name: None,
            field: None,
            seed: 0,
            attempts: DEFAULT_ATTEMPTS,
            time_budget_s: None,
            categories: BTreeMap::new(),
            modules: BTreeMap::new(),
            pairs: BTreeMap::new(),
            contexts: BTreeMap::new(),
            tasks: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field.as_ref().and_then(|f| parse_field(f.get_ref()).ok()).unwrap_or(Field::Rational)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenarios serialize")
    }
}

/// Parses and validates a scenario. Besides syntax this resolves every name,
/// rejects module cycles, checks task arguments and builds the categories
/// and modules once, so malformed relations are reported here too.
pub fn parse_scenario(text: &str) -> Result<Scenario, ParseError> {
    let s: Scenario = toml::from_str(text).map_err(|e| {
        let (line, col) = e.span().map_or((1, 1), |r| line_col(text, r.start));
        ParseError { line, col, message: e.message().trim().to_string() }
    })?;
    let v = Validator { text };
    v.check(&s)?;
    crate::build::Workspace::build(&s, s.field()).map_err(|e| e.locate(text))?;
    Ok(s)
}

pub(crate) struct Validator<'a> {
    pub(crate) text: &'a str,
}

impl Validator<'_> {
    fn err<T>(&self, span: std::ops::Range<usize>, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = line_col(self.text, span.start);
        Err(ParseError { line, col, message: message.into() })
    }

    fn exists<T>(&self, what: &str, name: &Spanned<String>, map: &BTreeMap<String, T>) -> Result<(), ParseError> {
        if map.contains_key(name.get_ref()) {
            Ok(())
        } else {
            self.err(name.span(), format!("undefined {what} `{}`", name.get_ref()))
        }
    }

    fn check(&self, s: &Scenario) -> Result<(), ParseError> {
        if s.format != SCENARIO_FORMAT {
            return self.err(0..0, format!("unsupported format `{}` (expected `{SCENARIO_FORMAT}`)", s.format));
        }
        if let Some(f) = &s.field {
            if let Err(m) = parse_field(f.get_ref()) {
                return self.err(f.span(), m);
            }
        }
        for (name, def) in &s.modules {
            let d = def.get_ref();
            match d.kind {
                ModuleKind::Twisted => match &d.category {
                    Some(c) => self.exists("category", c, &s.categories)?,
                    None => return self.err(def.span(), format!("module `{name}` needs a `category`")),
                },
                ModuleKind::PPrime => match &d.of {
                    Some(o) => self.exists("module", o, &s.modules)?,
                    None => return self.err(def.span(), format!("module `{name}` needs `of`")),
                },
            }
        }
        self.acyclic(s)?;
        for def in s.pairs.values() {
            self.exists("module", &def.get_ref().m, &s.modules)?;
            self.exists("module", &def.get_ref().n, &s.modules)?;
        }
        for (name, def) in &s.contexts {
            let d = def.get_ref();
            if d.kind == ContextKind::Pair {
                match &d.pair {
                    Some(p) => self.exists("pair", p, &s.pairs)?,
                    None => return self.err(def.span(), format!("context `{name}` needs a `pair`")),
                }
            }
        }
        for t in &s.tasks {
            self.task(s, t)?;
        }
        Ok(())
    }

    fn acyclic(&self, s: &Scenario) -> Result<(), ParseError> {
        for start in s.modules.keys() {
            let mut seen = BTreeSet::new();
            let mut cur = start.as_str();
            while let Some(next) = s.modules[cur].get_ref().of.as_ref().filter(|_| s.modules[cur].get_ref().kind == ModuleKind::PPrime) {
                if !seen.insert(cur.to_string()) {
                    return self.err(next.span(), format!("module `{start}` depends on itself"));
                }
                cur = next.get_ref();
            }
        }
        Ok(())
    }

    pub(crate) fn task(&self, s: &Scenario, t: &Spanned<TaskDef>) -> Result<(), ParseError> {
        let d = t.get_ref();
        let span = t.span();
        let need = |field: &Option<Spanned<String>>, what: &str| -> Result<(), ParseError> {
            match field {
                Some(_) => Ok(()),
                None => self.err(span.clone(), format!("task `{}` needs a `{what}`", d.check.label())),
            }
        };
        for r in [
            d.module.as_ref().map(|n| self.exists("module", n, &s.modules)),
            d.target.as_ref().map(|n| self.exists("module", n, &s.modules)),
            d.category.as_ref().map(|n| self.exists("category", n, &s.categories)),
            d.pair.as_ref().map(|n| self.exists("pair", n, &s.pairs)),
            d.context.as_ref().map(|n| self.exists("context", n, &s.contexts)),
        ]
        .into_iter()
        .flatten()
        {
            r?;
        }
        if let Some(dims) = &d.dims {
            for k in dims.get_ref().keys() {
                if k.parse::<i64>().is_err() {
                    return self.err(dims.span(), format!("malformed degree `{k}` in `dims`"));
                }
            }
        }
        match d.check {
            CheckKind::Homology => {
                if d.module.is_none() && d.category.is_none() {
                    return self.err(span, "task `homology` needs a `module` or a `category`");
                }
            }
            CheckKind::SphericalObject => need(&d.module, "module")?,
            CheckKind::PObject | CheckKind::PPrimeCotwist => {
                need(&d.module, "module")?;
                if d.n.is_none() {
                    return self.err(span, format!("task `{}` needs `n`", d.check.label()));
                }
            }
            CheckKind::PPrimeSerre => {
                need(&d.pair, "pair")?;
                if d.n.is_none() {
                    return self.err(span, "task `p-prime-serre` needs `n`");
                }
            }
            CheckKind::Sod => need(&d.context, "context")?,
            _ => need(&d.pair, "pair")?,
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_col_counts_from_one() {
        assert_eq!(line_col("ab\ncd", 0), (1, 1));
        assert_eq!(line_col("ab\ncd", 4), (2, 2));
    }

    #[test]
    fn fields() {
        assert_eq!(parse_field("rational"), Ok(Field::Rational));
        assert_eq!(parse_field("prime:7"), Ok(Field::Prime(7)));
        assert_eq!(parse_field("F_5"), Ok(Field::Prime(5)));
        assert!(parse_field("prime:8").is_err());
        assert!(parse_field("reals").is_err());
    }
}
