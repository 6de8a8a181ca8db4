use std::fmt;

use crate::exactlinalg::sparse::axpy;
use crate::exactlinalg::{Field, FiniteComplex, GradedVectorSpace, LinMap, SVec, Scalar};

use super::DgError;

/// A named homogeneous basis element of a hom space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub name: String,
    pub deg: i64,
}

/// A finite dg-category given by structure constants.
///
/// `hom(x, y)` is the space of morphisms `x → y`; `g ∘ f` for `f: x → y`,
/// `g: y → z` is looked up in the composition table of the triple `(x, y, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGCategory {
    field: Field,
    name: String,
    objects: Vec<String>,
    homs: Vec<Vec<BasisElem>>,
    diffs: Vec<LinMap>,
    comp: Vec<Vec<SVec>>,
    units: Vec<SVec>,
}

/// Mutable construction side of [`DGCategory`]. Compositions left unset are zero.
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    field: Field,
    name: String,
    objects: Vec<String>,
    homs: Vec<Vec<BasisElem>>,
    diff_entries: Vec<Vec<(usize, usize, Scalar)>>,
    comp: Vec<(usize, usize, usize, usize, usize, SVec)>,
    units: Vec<Option<SVec>>,
}

impl CategoryBuilder {
    pub fn new(field: Field, name: &str, objects: Vec<String>) -> Self {
        let n = objects.len();
        CategoryBuilder {
            field,
            name: name.to_string(),
            objects,
            homs: vec![Vec::new(); n * n],
            diff_entries: vec![Vec::new(); n * n],
            comp: Vec::new(),
            units: vec![None; n],
        }
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn add_basis(&mut self, x: usize, y: usize, name: impl Into<String>, deg: i64) -> usize {
        let h = &mut self.homs[x * self.objects.len() + y];
        h.push(BasisElem { name: name.into(), deg });
        h.len() - 1
    }

    pub fn hom_len(&self, x: usize, y: usize) -> usize {
        self.homs[x * self.objects.len() + y].len()
    }

    /// Adds `c · e_to` to `d(e_from)` in `hom(x, y)`.
    pub fn add_diff(&mut self, x: usize, y: usize, from: usize, to: usize, c: Scalar) {
        self.diff_entries[x * self.objects.len() + y].push((to, from, c));
    }

    /// Sets `g_j ∘ f_i` for `f_i ∈ hom(x, y)`, `g_j ∈ hom(y, z)`.
    pub fn set_comp(&mut self, x: usize, y: usize, z: usize, j: usize, i: usize, v: SVec) {
        self.comp.push((x, y, z, j, i, v));
    }

    pub fn set_unit(&mut self, x: usize, v: SVec) {
        self.units[x] = Some(v);
    }

    pub fn build(self) -> Result<DGCategory, DgError> {
        let n = self.objects.len();
        let diffs = self
            .diff_entries
            .into_iter()
            .enumerate()
            .map(|(k, e)| {
                let m = self.homs[k].len();
                LinMap::from_triplets(self.field, m, m, e)
            })
            .collect();
        let mut comp: Vec<Vec<SVec>> = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let a = self.homs[x * n + y].len();
                    let b = self.homs[y * n + z].len();
                    comp.push(vec![Vec::new(); a * b]);
                }
            }
        }
        for (x, y, z, j, i, v) in self.comp {
            let a = self.homs[x * n + y].len();
            let b = self.homs[y * n + z].len();
            if i >= a || j >= b {
                return Err(DgError::Invalid(format!("composition index out of range at ({x},{y},{z})")));
            }
            comp[(x * n + y) * n + z][j * a + i] = v;
        }
        let mut units = Vec::with_capacity(n);
        for (x, u) in self.units.into_iter().enumerate() {
            units.push(u.ok_or_else(|| DgError::Invalid(format!("object {} has no unit", self.objects[x])))?);
        }
        Ok(DGCategory { field: self.field, name: self.name, objects: self.objects, homs: self.homs, diffs, comp, units })
    }
}

impl DGCategory {
    /// Equality of all structure constants, ignoring the category name.
    pub fn same_structure(&self, other: &DGCategory) -> bool {
        self.field == other.field
            && self.objects == other.objects
            && self.homs == other.homs
            && self.diffs == other.diffs
            && self.comp == other.comp
            && self.units == other.units
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn with_object_names(mut self, names: &[&str]) -> Self {
        assert_eq!(names.len(), self.objects.len(), "object name count");
        self.objects = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn basis(&self, x: usize, y: usize) -> &[BasisElem] {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.basis(x, y).len()
    }

    pub fn deg(&self, x: usize, y: usize, i: usize) -> i64 {
        self.basis(x, y)[i].deg
    }

    pub fn hom_degs(&self, x: usize, y: usize) -> Vec<i64> {
        self.basis(x, y).iter().map(|b| b.deg).collect()
    }

    /// Degree of a homogeneous element (`None` for zero or inhomogeneous).
    pub fn elem_degree(&self, x: usize, y: usize, v: &[(usize, Scalar)]) -> Option<i64> {
        let mut it = v.iter().map(|(i, _)| self.deg(x, y, *i));
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn diff(&self, x: usize, y: usize) -> &LinMap {
        &self.diffs[x * self.objects.len() + y]
    }

    pub fn d(&self, x: usize, y: usize, v: &[(usize, Scalar)]) -> SVec {
        self.diff(x, y).apply(v)
    }

    pub fn unit(&self, x: usize) -> &SVec {
        &self.units[x]
    }

    pub fn total_dim(&self) -> usize {
        self.homs.iter().map(Vec::len).sum()
    }

    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(LinMap::is_zero)
    }

    /// `g_j ∘ f_i` for basis elements.
    pub fn comp_basis(&self, x: usize, y: usize, z: usize, j: usize, i: usize) -> &SVec {
        let n = self.objects.len();
        let a = self.hom_dim(x, y);
        &self.comp[(x * n + y) * n + z][j * a + i]
    }

    /// `g ∘ f` with `f ∈ hom(x, y)`, `g ∈ hom(y, z)`.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &[(usize, Scalar)], f: &[(usize, Scalar)]) -> SVec {
        let mut acc = Vec::new();
        for (j, b) in g {
            for (i, a) in f {
                let c = a * b;
                acc = axpy(&acc, &c, self.comp_basis(x, y, z, *j, *i));
            }
        }
        acc
    }

    /// The map `hom(x, y) → hom(x, z)`, `f ↦ g ∘ f`.
    pub fn post(&self, x: usize, y: usize, z: usize, g: &[(usize, Scalar)]) -> LinMap {
        let cols = (0..self.hom_dim(x, y)).map(|i| self.compose(x, y, z, g, &[(i, self.field.one())])).collect();
        LinMap::from_columns(self.field, self.hom_dim(x, z), cols)
    }

    /// The map `hom(y, z) → hom(x, z)`, `g ↦ g ∘ f`.
    pub fn pre(&self, x: usize, y: usize, z: usize, f: &[(usize, Scalar)]) -> LinMap {
        let cols = (0..self.hom_dim(y, z)).map(|j| self.compose(x, y, z, &[(j, self.field.one())], f)).collect();
        LinMap::from_columns(self.field, self.hom_dim(x, z), cols)
    }

    pub fn hom_complex(&self, x: usize, y: usize) -> FiniteComplex {
        FiniteComplex::from_basis_unchecked(self.hom_degs(x, y), self.diff(x, y).clone())
    }

    pub fn hom_dims(&self, x: usize, y: usize) -> GradedVectorSpace {
        GradedVectorSpace::of_degrees(&self.hom_degs(x, y))
    }

    /// Homology of `hom(x, y)`.
    pub fn hom_homology(&self, x: usize, y: usize) -> GradedVectorSpace {
        self.hom_complex(x, y).homology_dims()
    }

    pub fn basis_vec(&self, i: usize) -> SVec {
        vec![(i, self.field.one())]
    }

    /// Exhaustive axiom check.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let n = self.n_objects();
        let f = self.field;
        for x in 0..n {
            for y in 0..n {
                let dm = self.diff(x, y);
                for (i, col) in dm.columns.iter().enumerate() {
                    rep.checks += 1;
                    if let Some((k, _)) = col.iter().find(|(k, _)| self.deg(x, y, *k) != self.deg(x, y, i) + 1) {
                        rep.fail(
                            "differential degree",
                            format!(
                                "d({}) hits {} in hom({},{})",
                                self.basis(x, y)[i].name,
                                self.basis(x, y)[*k].name,
                                self.objects[x],
                                self.objects[y]
                            ),
                        );
                    }
                    rep.checks += 1;
                    let dd = dm.apply(col);
                    if !dd.is_empty() {
                        rep.fail("d² = 0", format!("d²({}) ≠ 0 in hom({},{})", self.basis(x, y)[i].name, self.objects[x], self.objects[y]));
                    }
                }
            }
        }
        for x in 0..n {
            let u = self.unit(x);
            rep.checks += 1;
            if self.elem_degree(x, x, u) != Some(0) || !self.d(x, x, u).is_empty() {
                rep.fail("unit", format!("unit of {} is not a closed degree-0 element", self.objects[x]));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for i in 0..self.hom_dim(x, y) {
                        for j in 0..self.hom_dim(y, z) {
                            let gf = self.comp_basis(x, y, z, j, i);
                            let dg = self.deg(y, z, j);
                            let df = self.deg(x, y, i);
                            rep.checks += 2;
                            if gf.iter().any(|(k, _)| self.deg(x, z, *k) != dg + df) {
                                rep.fail("composition degree", self.triple_witness(x, y, z, j, i));
                            }
                            let lhs = self.d(x, z, gf);
                            let mut rhs = self.compose(x, y, z, &self.d(y, z, &self.basis_vec(j)), &self.basis_vec(i));
                            let sign = f.one().signed(dg);
                            rhs = axpy(&rhs, &sign, &self.compose(x, y, z, &self.basis_vec(j), &self.d(x, y, &self.basis_vec(i))));
                            if lhs != rhs {
                                rep.fail("Leibniz", self.triple_witness(x, y, z, j, i));
                            }
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let u_left = self.unit(y);
                let u_right = self.unit(x);
                for i in 0..self.hom_dim(x, y) {
                    let e = self.basis_vec(i);
                    rep.checks += 2;
                    if self.compose(x, y, y, u_left, &e) != e || self.compose(x, x, y, &e, u_right) != e {
                        rep.fail("unitality", format!("{} in hom({},{})", self.basis(x, y)[i].name, self.objects[x], self.objects[y]));
                    }
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for i in 0..self.hom_dim(w, x) {
                            for j in 0..self.hom_dim(x, y) {
                                let gf = self.comp_basis(w, x, y, j, i);
                                for k in 0..self.hom_dim(y, z) {
                                    rep.checks += 1;
                                    let h = self.basis_vec(k);
                                    let left = self.compose(w, y, z, &h, gf);
                                    let hg = self.comp_basis(x, y, z, k, j);
                                    let right = self.compose(w, x, z, hg, &self.basis_vec(i));
                                    if left != right {
                                        rep.fail(
                                            "associativity",
                                            format!(
                                                "({}∘{})∘{} ≠ {}∘({}∘{}) over ({},{},{},{})",
                                                self.basis(y, z)[k].name,
                                                self.basis(x, y)[j].name,
                                                self.basis(w, x)[i].name,
                                                self.basis(y, z)[k].name,
                                                self.basis(x, y)[j].name,
                                                self.basis(w, x)[i].name,
                                                self.objects[w],
                                                self.objects[x],
                                                self.objects[y],
                                                self.objects[z]
                                            ),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        rep
    }

    fn triple_witness(&self, x: usize, y: usize, z: usize, j: usize, i: usize) -> String {
        format!(
            "{}∘{} over ({},{},{})",
            self.basis(y, z)[j].name,
            self.basis(x, y)[i].name,
            self.objects[x],
            self.objects[y],
            self.objects[z]
        )
    }

    /// Rebuilds the category with one composition constant replaced; used for negative controls.
    pub fn with_comp_override(&self, x: usize, y: usize, z: usize, j: usize, i: usize, v: SVec) -> DGCategory {
        let mut c = self.clone();
        let n = self.n_objects();
        let a = self.hom_dim(x, y);
        c.comp[(x * n + y) * n + z][j * a + i] = v;
        c
    }

    /// Per-pair hom dims, a compact summary used in reports.
    pub fn hom_table(&self) -> Vec<(String, String, GradedVectorSpace)> {
        let mut out = Vec::new();
        for x in 0..self.n_objects() {
            for y in 0..self.n_objects() {
                out.push((self.objects[x].clone(), self.objects[y].clone(), self.hom_dims(x, y)));
            }
        }
        out
    }
}

impl fmt::Display for DGCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dg-category {} over {}", self.name, self.field)?;
        for (x, y, dims) in self.hom_table() {
            if dims.total() > 0 {
                writeln!(f, "  hom({x},{y}) = {dims}")?;
            }
        }
        Ok(())
    }
}

/// Outcome of an exhaustive axiom check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: usize,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: String,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fail(&mut self, axiom: &str, witness: String) {
        // Keep reports readable on badly broken inputs.
        if self.violations.len() < 64 {
            self.violations.push(Violation { axiom: axiom.to_string(), witness });
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checks += other.checks;
        for v in other.violations {
            self.fail(&v.axiom, v.witness);
        }
    }

    pub fn into_result(self) -> Result<(), DgError> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(DgError::Axiom { axiom: v.axiom.clone(), witness: v.witness.clone() }),
        }
    }
}
