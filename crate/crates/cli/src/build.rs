//! Materializes the named objects of a scenario over a chosen field.

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use dgtwist_core::dgcat::{
    kronecker, point, quiver_path_category, truncated_polynomial, zigzag, Arrow, CategoryBuilder, DGCategory, Relation,
};
use dgtwist_core::exactlinalg::SVec;
use dgtwist_core::glued::{kronecker_context, GluedCategoryContext};
use dgtwist_core::spherical::{dual_numbers, glue_spherical, p_prime, GluedSphericalDatum};
use dgtwist_core::twisted::{Gen, HomMatrix, TCBimodule, TwistedComplex};
use dgtwist_core::{Field, Scalar};
use toml::Spanned;

use crate::scenario::{line_col, CategoryDef, CategoryKind, Coeff, ContextKind, ModuleKind, ParseError, Scenario, Term};

/// An error while building a named object, with the span of its definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildError {
    pub span: Range<usize>,
    pub message: String,
}

impl BuildError {
    fn at<T>(span: Range<usize>, message: impl Into<String>) -> Result<T, BuildError> {
        Err(BuildError { span, message: message.into() })
    }

    pub fn locate(&self, text: &str) -> ParseError {
        let (line, col) = line_col(text, self.span.start);
        ParseError { line, col, message: self.message.clone() }
    }
}

impl std::fmt::Display for BuildError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

/// A module: a twisted complex over a point-indexed family, or a general
/// twisted bimodule such as `P'`.
#[derive(Clone, Debug)]
pub struct Module {
    pub tc: Option<TwistedComplex>,
    pub bimodule: TCBimodule,
}

/// Everything a scenario defines, built eagerly except for glued data.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub field: Field,
    pub categories: BTreeMap<String, Arc<DGCategory>>,
    pub modules: BTreeMap<String, Module>,
}

fn coeff(field: Field, c: &Coeff) -> Result<Scalar, String> {
    match c {
        Coeff::Int(n) => Ok(field.int(*n)),
        Coeff::Text(s) => field.parse(s).map_err(|_| format!("malformed coefficient `{s}`")),
    }
}

impl Workspace {
    pub fn build(s: &Scenario, field: Field) -> Result<Workspace, BuildError> {
        let mut categories = BTreeMap::new();
        for (name, def) in &s.categories {
            let c = build_category(name, def.get_ref(), field).or_else(|m| BuildError::at(def.span(), m))?;
            categories.insert(name.clone(), Arc::new(c));
        }
        let mut ws = Workspace { field, categories, modules: BTreeMap::new() };
        for name in s.modules.keys() {
            ws.module_rec(s, name)?;
        }
        Ok(ws)
    }

    fn module_rec(&mut self, s: &Scenario, name: &str) -> Result<Module, BuildError> {
        if let Some(m) = self.modules.get(name) {
            return Ok(m.clone());
        }
        let def = &s.modules[name];
        let d = def.get_ref();
        let m = match d.kind {
            ModuleKind::Twisted => {
                let cat = &self.categories[d.category.as_ref().expect("validated").get_ref()];
                build_twisted(cat, d.gens.as_deref().unwrap_or(&[]), d.delta.as_deref().unwrap_or(&[]), self.field)
                    .or_else(|m| BuildError::at(def.span(), format!("module `{name}`: {m}")))?
            }
            ModuleKind::PPrime => {
                let of = d.of.as_ref().expect("validated");
                let base = self.module_rec(s, of.get_ref())?;
                let Some(tc) = base.tc else {
                    return BuildError::at(of.span(), format!("`{}` is not a twisted complex", of.get_ref()));
                };
                let pp = p_prime(&tc, None).or_else(|e| BuildError::at(def.span(), format!("module `{name}`: {e}")))?;
                Module { tc: None, bimodule: pp.bimodule }
            }
        };
        self.modules.insert(name.to_string(), m.clone());
        Ok(m)
    }

    pub fn category(&self, name: &Spanned<String>) -> &Arc<DGCategory> {
        &self.categories[name.get_ref()]
    }

    pub fn module(&self, name: &Spanned<String>) -> &Module {
        &self.modules[name.get_ref()]
    }

    /// Glues a named pair.
    pub fn pair(&self, s: &Scenario, name: &str) -> Result<(GluedSphericalDatum, Option<i64>), String> {
        let p = s.pairs[name].get_ref();
        let (m, n) = (&self.modules[p.m.get_ref()].bimodule, &self.modules[p.n.get_ref()].bimodule);
        let d = glue_spherical(m, n).map_err(|e| format!("pair `{name}`: {e}"))?;
        Ok((d, p.d))
    }

    pub fn context(&self, s: &Scenario, name: &str) -> Result<GluedCategoryContext, String> {
        let c = s.contexts[name].get_ref();
        match c.kind {
            ContextKind::Kronecker => Ok(kronecker_context(self.field)),
            ContextKind::Pair => Ok(self.pair(s, c.pair.as_ref().expect("validated").get_ref())?.0.ctx),
        }
    }
}

fn build_twisted(
    cat: &Arc<DGCategory>,
    gens: &[crate::scenario::GenDef],
    delta: &[crate::scenario::DeltaDef],
    field: Field,
) -> Result<Module, String> {
    if gens.is_empty() {
        let bimodule = TCBimodule::zero(&Arc::new(point(field)), cat);
        return Ok(Module { tc: Some(TwistedComplex::zero(cat)), bimodule });
    }
    let mut gs = Vec::with_capacity(gens.len());
    for g in gens {
        let o = cat.object_index(&g.obj).ok_or_else(|| format!("unknown object `{}`", g.obj))?;
        gs.push(Gen::new(o, g.shift));
    }
    let mut d = HomMatrix::new();
    for e in delta {
        if e.from >= gs.len() || e.to >= gs.len() {
            return Err(format!("delta entry {} -> {} is out of range", e.from, e.to));
        }
        let v = element(cat, gs[e.from].obj, gs[e.to].obj, &e.value, field)?;
        d.add_to(e.to, e.from, &v);
    }
    let tc = TwistedComplex::new(cat.clone(), gs, d).map_err(|e| e.to_string())?;
    Ok(Module { bimodule: TCBimodule::of_tc(&tc), tc: Some(tc) })
}

/// A combination of named basis elements of `hom(x, y)`.
fn element(cat: &DGCategory, x: usize, y: usize, terms: &[Term], field: Field) -> Result<SVec, String> {
    let mut v = SVec::new();
    for t in terms {
        let i = cat
            .basis(x, y)
            .iter()
            .position(|b| b.name == t.elem)
            .ok_or_else(|| format!("no basis element `{}` in hom({}, {})", t.elem, cat.objects()[x], cat.objects()[y]))?;
        v = dgtwist_core::exactlinalg::sparse::axpy(&v, &coeff(field, &t.coeff)?, &[(i, field.one())]);
    }
    Ok(v)
}

fn need<'a, T>(v: &'a Option<T>, what: &str, kind: &str) -> Result<&'a T, String> {
    v.as_ref().ok_or_else(|| format!("a `{kind}` category needs `{what}`"))
}

fn build_category(name: &str, d: &CategoryDef, field: Field) -> Result<DGCategory, String> {
    let c = match d.kind {
        CategoryKind::Point => point(field),
        CategoryKind::TruncatedPolynomial => {
            truncated_polynomial(field, *need(&d.n, "n", "truncated-polynomial")?, *need(&d.deg, "deg", "truncated-polynomial")?)
        }
        CategoryKind::DualNumbers => (*dual_numbers(field)).clone(),
        CategoryKind::Zigzag => zigzag(field),
        CategoryKind::Kronecker => kronecker(field, d.deg.unwrap_or(0)),
        CategoryKind::Quiver => quiver(d, field)?,
        CategoryKind::Raw => raw(name, d, field)?,
    };
    Ok(c.with_name(name))
}

fn quiver(d: &CategoryDef, field: Field) -> Result<DGCategory, String> {
    let vertices = need(&d.vertices, "vertices", "quiver")?;
    let vidx = |v: &str| vertices.iter().position(|w| w == v).ok_or_else(|| format!("unknown vertex `{v}`"));
    let mut arrows = Vec::new();
    for a in need(&d.arrows, "arrows", "quiver")? {
        arrows.push(Arrow { name: a.name.clone(), src: vidx(&a.src)?, tgt: vidx(&a.tgt)?, deg: a.deg });
    }
    let aidx = |n: &str| arrows.iter().position(|a| a.name == n).ok_or_else(|| format!("unknown arrow `{n}`"));
    let mut rels = Vec::new();
    for r in d.relations.as_deref().unwrap_or(&[]) {
        let mut terms = Vec::new();
        for t in r {
            let path = t.path.split_whitespace().map(aidx).collect::<Result<Vec<_>, _>>()?;
            terms.push((coeff(field, &t.coeff)?, path));
        }
        rels.push(Relation { terms });
    }
    let bound = d.bound.unwrap_or(arrows.len() + 1);
    quiver_path_category(field, vertices, &arrows, &rels, bound).map_err(|e| e.to_string())
}

/// Structure constants by name. Basis names must be unique in the category;
/// `1 ∘ f = f ∘ 1 = f` is filled in for the declared units.
fn raw(name: &str, d: &CategoryDef, field: Field) -> Result<DGCategory, String> {
    let objects = need(&d.objects, "objects", "raw")?.clone();
    let oidx = |v: &str| objects.iter().position(|w| w == v).ok_or_else(|| format!("unknown object `{v}`"));
    let mut b = CategoryBuilder::new(field, name, objects.clone());
    // name → (x, y, index)
    let mut elems: BTreeMap<String, (usize, usize, usize)> = BTreeMap::new();
    for e in need(&d.basis, "basis", "raw")? {
        let (x, y) = (oidx(&e.src)?, oidx(&e.tgt)?);
        let i = b.add_basis(x, y, e.name.clone(), e.deg);
        if elems.insert(e.name.clone(), (x, y, i)).is_some() {
            return Err(format!("basis element `{}` declared twice", e.name));
        }
    }
    let look = |n: &str| elems.get(n).copied().ok_or_else(|| format!("unknown basis element `{n}`"));
    let combo = |terms: &[Term], x: usize, y: usize| -> Result<SVec, String> {
        let mut v = SVec::new();
        for t in terms {
            let (a, c, i) = look(&t.elem)?;
            if (a, c) != (x, y) {
                return Err(format!("`{}` is not in hom({}, {})", t.elem, objects[x], objects[y]));
            }
            v = dgtwist_core::exactlinalg::sparse::axpy(&v, &coeff(field, &t.coeff)?, &[(i, field.one())]);
        }
        Ok(v)
    };
    let units = need(&d.units, "units", "raw")?;
    let mut unit_idx = vec![None; objects.len()];
    for (o, u) in units {
        let x = oidx(o)?;
        let (a, c, i) = look(u)?;
        if (a, c) != (x, x) {
            return Err(format!("unit `{u}` is not an endomorphism of `{o}`"));
        }
        b.set_unit(x, vec![(i, field.one())]);
        unit_idx[x] = Some(i);
    }
    for &(x, y, i) in elems.values() {
        if let Some(u) = unit_idx[y] {
            b.set_comp(x, y, y, u, i, vec![(i, field.one())]);
        }
        if let Some(u) = unit_idx[x] {
            b.set_comp(x, x, y, i, u, vec![(i, field.one())]);
        }
    }
    for c in d.compose.as_deref().unwrap_or(&[]) {
        let (x, y, i) = look(&c.f)?;
        let (y2, z, j) = look(&c.g)?;
        if y != y2 {
            return Err(format!("`{}` ∘ `{}` is not composable", c.g, c.f));
        }
        b.set_comp(x, y, z, j, i, combo(&c.value, x, z)?);
    }
    for df in d.differential.as_deref().unwrap_or(&[]) {
        let (x, y, i) = look(&df.of)?;
        for (k, c) in combo(&df.value, x, y)? {
            b.add_diff(x, y, i, k, c);
        }
    }
    let cat = b.build().map_err(|e| e.to_string())?;
    let v = cat.validate();
    if !v.passed() {
        return Err(format!("category `{name}` violates its axioms: {:?}", v.violations.first()));
    }
    Ok(cat)
}
