use std::sync::Arc;

use crate::dgcat::{DGCategory, ValidationReport};
use crate::exactlinalg::{Field, FiniteComplex, GradedVectorSpace, LinMap, SVec, Scalar};

use super::matrix::{Gen, HomMatrix};
use super::TwistedError;

/// A one-sided twisted complex `(⊕ h^{o_i}[s_i], δ)` over `C`.
///
/// Its value at `c` has basis `(i, e)` with `e ∈ hom(c, o_i)` in degree
/// `|e| - s_i`, and differential
/// `D(i, e) = (-1)^{s_i} (i, de) + Σ_j (j, δ_ji ∘ e)`.
/// Maurer–Cartan reads `(-1)^{s_j} dδ_ji + Σ_k δ_jk δ_ki = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    cat: Arc<DGCategory>,
    gens: Vec<Gen>,
    delta: HomMatrix,
}

impl TwistedComplex {
    /// Validated constructor.
    pub fn new(cat: Arc<DGCategory>, gens: Vec<Gen>, delta: HomMatrix) -> Result<Self, TwistedError> {
        let t = TwistedComplex { cat, gens, delta };
        t.validate().into_result()?;
        Ok(t)
    }

    pub(crate) fn from_parts(cat: Arc<DGCategory>, gens: Vec<Gen>, delta: HomMatrix) -> Self {
        let t = TwistedComplex { cat, gens, delta };
        debug_assert!(t.validate().passed(), "{:?}", t.validate().violations);
        t
    }

    /// No validation at all; for intermediate shapes during recognition.
    pub(crate) fn from_parts_unchecked(cat: Arc<DGCategory>, gens: Vec<Gen>, delta: HomMatrix) -> Self {
        TwistedComplex { cat, gens, delta }
    }

    pub fn zero(cat: &Arc<DGCategory>) -> Self {
        TwistedComplex { cat: cat.clone(), gens: Vec::new(), delta: HomMatrix::new() }
    }

    /// `h^obj[shift]`.
    pub fn representable(cat: &Arc<DGCategory>, obj: usize, shift: i64) -> Self {
        TwistedComplex { cat: cat.clone(), gens: vec![Gen::new(obj, shift)], delta: HomMatrix::new() }
    }

    pub fn cat(&self) -> &Arc<DGCategory> {
        &self.cat
    }

    pub fn field(&self) -> Field {
        self.cat.field()
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn delta(&self) -> &HomMatrix {
        &self.delta
    }

    pub fn objs(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.obj).collect()
    }

    pub fn shifts(&self) -> Vec<i64> {
        self.gens.iter().map(|g| g.shift).collect()
    }

    /// Same data over another (structurally equal) category.
    pub fn rebased(&self, cat: &Arc<DGCategory>) -> Self {
        TwistedComplex { cat: cat.clone(), gens: self.gens.clone(), delta: self.delta.clone() }
    }

    /// Maurer–Cartan and strict lower-triangularity.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let objs = self.objs();
        rep.checks += 1;
        if let Some((j, i, _)) = self.delta.iter().find(|(j, i, _)| j <= i) {
            rep.fail("strictly lower triangular", format!("entry ({j},{i})"));
        }
        rep.checks += 1;
        if self.delta.iter().any(|(j, i, _)| j >= self.len() || i >= self.len()) {
            rep.fail("entry index", "out of range".into());
            return rep;
        }
        rep.checks += 1;
        let s = self.shifts();
        if let Err((j, i)) = self.delta.has_degrees(&self.cat, &objs, &objs, |j, i| 1 + s[j] - s[i]) {
            rep.fail("twisting degree", format!("entry ({j},{i}) is not of degree {}", 1 + s[j] - s[i]));
        }
        rep.checks += 1;
        let mc = self.maurer_cartan();
        if let Some((j, i, _)) = mc.iter().next() {
            rep.fail("Maurer–Cartan", format!("entry ({j},{i}) nonzero"));
        }
        rep
    }

    /// `(-1)^{s_j} dδ + δδ`.
    pub fn maurer_cartan(&self) -> HomMatrix {
        let objs = self.objs();
        let s = self.shifts();
        let dd = self.delta.d_entries(&self.cat, &objs, &objs).signed_by(self.field(), |j, _| s[j]);
        dd.add(&self.delta.compose(&self.delta, &self.cat, &objs, &objs, &objs))
    }

    /// `X[n]`: shifts grow by `n`, `δ ↦ (-1)^n δ`.
    pub fn shift(&self, n: i64) -> Self {
        TwistedComplex {
            cat: self.cat.clone(),
            gens: self.gens.iter().map(|g| Gen::new(g.obj, g.shift + n)).collect(),
            delta: if n.rem_euclid(2) == 1 { self.delta.neg() } else { self.delta.clone() },
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        let n = self.len();
        TwistedComplex { cat: self.cat.clone(), gens, delta: self.delta.add(&other.delta.offset(n, n)) }
    }

    /// Basis of the value at `c`: `(generator, basis element of hom(c, o_i))`.
    pub fn value_basis(&self, c: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            for e in 0..self.cat.hom_dim(c, g.obj) {
                out.push((i, e));
            }
        }
        out
    }

    fn offsets_at(&self, c: usize) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.len() + 1);
        let mut acc = 0;
        for g in &self.gens {
            off.push(acc);
            acc += self.cat.hom_dim(c, g.obj);
        }
        off.push(acc);
        off
    }

    /// The complex `X(c)`.
    pub fn value(&self, c: usize) -> FiniteComplex {
        let off = self.offsets_at(c);
        let mut degs = Vec::with_capacity(off[self.len()]);
        for g in &self.gens {
            degs.extend(self.cat.hom_degs(c, g.obj).iter().map(|d| d - g.shift));
        }
        let fld = self.field();
        let mut cols: Vec<SVec> = Vec::with_capacity(degs.len());
        for (i, g) in self.gens.iter().enumerate() {
            let sign = fld.one().signed(g.shift);
            let dint = self.cat.diff(c, g.obj);
            for e in 0..self.cat.hom_dim(c, g.obj) {
                let mut col: Vec<(usize, Scalar)> = dint.columns[e].iter().map(|(k, x)| (off[i] + k, x * &sign)).collect();
                for (j, ii, v) in self.delta.iter() {
                    if ii != i {
                        continue;
                    }
                    let img = self.cat.compose(c, g.obj, self.gens[j].obj, v, &[(e, fld.one())]);
                    col.extend(img.into_iter().map(|(k, x)| (off[j] + k, x)));
                }
                cols.push(crate::exactlinalg::sparse::collect(fld, col));
            }
        }
        FiniteComplex::from_basis_unchecked(degs, LinMap::from_columns(fld, off[self.len()], cols))
    }

    pub fn homology_at(&self, c: usize) -> GradedVectorSpace {
        self.value(c).homology_dims()
    }

    /// Total homology dims over all objects (the "module homology").
    pub fn homology_dims(&self) -> Vec<GradedVectorSpace> {
        (0..self.cat.n_objects()).map(|c| self.homology_at(c)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        (0..self.cat.n_objects()).all(|c| self.value(c).is_acyclic())
    }

    /// The map `X(c) → Y(c)` induced by a morphism matrix `F: X → Y`.
    pub fn value_map(x: &Self, y: &Self, f: &HomMatrix, c: usize) -> LinMap {
        let (ox, oy) = (x.offsets_at(c), y.offsets_at(c));
        let fld = x.field();
        let cat = &x.cat;
        let mut cols = Vec::with_capacity(ox[x.len()]);
        for (i, g) in x.gens.iter().enumerate() {
            for e in 0..cat.hom_dim(c, g.obj) {
                let mut col = Vec::new();
                for (j, ii, v) in f.iter() {
                    if ii != i {
                        continue;
                    }
                    let img = cat.compose(c, g.obj, y.gens[j].obj, v, &[(e, fld.one())]);
                    col.extend(img.into_iter().map(|(k, s)| (oy[j] + k, s)));
                }
                cols.push(crate::exactlinalg::sparse::collect(fld, col));
            }
        }
        LinMap::from_columns(fld, oy[y.len()], cols)
    }

    /// Differential of a degree-`p` morphism matrix `F: X → Y`:
    /// `d(F)_ji = (-1)^{s^Y_j} dF_ji + (δ_Y F)_ji - (-1)^p (F δ_X)_ji`.
    pub fn map_differential(x: &Self, y: &Self, f: &HomMatrix, p: i64) -> HomMatrix {
        let (ox, oy) = (x.objs(), y.objs());
        let sy = y.shifts();
        let fld = x.field();
        let a = f.d_entries(&x.cat, &ox, &oy).signed_by(fld, |j, _| sy[j]);
        let b = y.delta.compose(f, &x.cat, &ox, &oy, &oy);
        let c = f.compose(&x.delta, &x.cat, &ox, &ox, &oy);
        a.add(&b).axpy(&-fld.one().signed(p), &c)
    }

    /// Entry degree of a degree-`p` morphism `X → Y` at `(j, i)`.
    pub fn entry_degree(x: &Self, y: &Self, p: i64, j: usize, i: usize) -> i64 {
        p + y.gens[j].shift - x.gens[i].shift
    }
}

/// Coordinates of morphism matrices `X → Y` as vectors in the hom complex.
#[derive(Clone, Debug)]
pub struct HomSpace {
    src_objs: Vec<usize>,
    tgt_objs: Vec<usize>,
    /// `(j, i, offset)` per block, row-major in `j` then `i`.
    blocks: Vec<(usize, usize, usize)>,
    degs: Vec<i64>,
}

impl HomSpace {
    pub fn new(x: &TwistedComplex, y: &TwistedComplex) -> HomSpace {
        let cat = &x.cat;
        let mut blocks = Vec::new();
        let mut degs = Vec::new();
        for (j, gy) in y.gens.iter().enumerate() {
            for (i, gx) in x.gens.iter().enumerate() {
                blocks.push((j, i, degs.len()));
                degs.extend(cat.hom_degs(gx.obj, gy.obj).iter().map(|d| d - gy.shift + gx.shift));
            }
        }
        HomSpace { src_objs: x.objs(), tgt_objs: y.objs(), blocks, degs }
    }

    pub fn dim(&self) -> usize {
        self.degs.len()
    }

    /// Map degree of each basis vector.
    pub fn degs(&self) -> &[i64] {
        &self.degs
    }

    fn block_index(&self, j: usize, i: usize) -> usize {
        j * self.src_objs.len() + i
    }

    pub fn flatten(&self, f: &HomMatrix) -> SVec {
        let mut out: SVec = Vec::new();
        for (j, i, v) in f.iter() {
            let off = self.blocks[self.block_index(j, i)].2;
            out.extend(v.iter().map(|(k, x)| (off + k, x.clone())));
        }
        out.sort_by_key(|e| e.0);
        out
    }

    pub fn unflatten(&self, v: &[(usize, Scalar)]) -> HomMatrix {
        let mut m = HomMatrix::new();
        for (k, x) in v {
            let b = match self.blocks.binary_search_by(|blk| blk.2.cmp(k)) {
                Ok(mut p) => {
                    // Skip empty blocks sharing this offset.
                    while p + 1 < self.blocks.len() && self.blocks[p + 1].2 == *k {
                        p += 1;
                    }
                    p
                }
                Err(p) => p - 1,
            };
            let (j, i, off) = self.blocks[b];
            m.add_to(j, i, &[(k - off, x.clone())]);
        }
        m
    }

    pub fn src_objs(&self) -> &[usize] {
        &self.src_objs
    }

    pub fn tgt_objs(&self) -> &[usize] {
        &self.tgt_objs
    }
}

/// The hom complex `Hom(X, Y)` with the twisted differential.
pub fn hom_complex(x: &TwistedComplex, y: &TwistedComplex) -> FiniteComplex {
    let hs = HomSpace::new(x, y);
    let fld = x.field();
    let cols = (0..hs.dim())
        .map(|k| {
            let f = hs.unflatten(&[(k, fld.one())]);
            hs.flatten(&TwistedComplex::map_differential(x, y, &f, hs.degs[k]))
        })
        .collect();
    FiniteComplex::from_basis_unchecked(hs.degs.clone(), LinMap::from_columns(fld, hs.dim(), cols))
}

/// A morphism of twisted complexes of a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMorphism {
    pub source: TwistedComplex,
    pub target: TwistedComplex,
    pub degree: i64,
    pub matrix: HomMatrix,
}

impl ChainMorphism {
    pub fn new(source: TwistedComplex, target: TwistedComplex, degree: i64, matrix: HomMatrix) -> Result<Self, TwistedError> {
        let objs = (source.objs(), target.objs());
        matrix
            .has_degrees(source.cat(), &objs.0, &objs.1, |j, i| TwistedComplex::entry_degree(&source, &target, degree, j, i))
            .map_err(|(j, i)| TwistedError::Degree(format!("morphism entry ({j},{i})")))?;
        Ok(ChainMorphism { source, target, degree, matrix })
    }

    pub fn identity(x: &TwistedComplex) -> Self {
        ChainMorphism { source: x.clone(), target: x.clone(), degree: 0, matrix: HomMatrix::identity(x.cat(), &x.objs()) }
    }

    pub fn zero(x: &TwistedComplex, y: &TwistedComplex, degree: i64) -> Self {
        ChainMorphism { source: x.clone(), target: y.clone(), degree, matrix: HomMatrix::new() }
    }

    pub fn differential(&self) -> ChainMorphism {
        ChainMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree + 1,
            matrix: TwistedComplex::map_differential(&self.source, &self.target, &self.matrix, self.degree),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.differential().matrix.is_zero()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMorphism) -> ChainMorphism {
        let m = self.matrix.compose(&first.matrix, self.source.cat(), &first.source.objs(), &first.target.objs(), &self.target.objs());
        ChainMorphism { source: first.source.clone(), target: self.target.clone(), degree: self.degree + first.degree, matrix: m }
    }

    pub fn value(&self, c: usize) -> LinMap {
        TwistedComplex::value_map(&self.source, &self.target, &self.matrix, c)
    }

    /// `cone(f)`: generators `src[1] ⊔ tgt`, `δ = [[-δ_src, 0], [f, δ_tgt]]`.
    pub fn cone(&self) -> Result<TwistedComplex, TwistedError> {
        if self.degree != 0 {
            return Err(TwistedError::NotClosed("cone needs a degree-0 map".into()));
        }
        if !self.is_closed() {
            return Err(TwistedError::NotClosed("cone of a non-closed map".into()));
        }
        Ok(cone_matrix(&self.source, &self.target, &self.matrix))
    }

    /// `is_quasi_iso(f)` iff `cone(f)` is acyclic at every object.
    pub fn is_quasi_iso(&self) -> bool {
        self.degree == 0
            && self.is_closed()
            && (0..self.source.cat().n_objects()).all(|c| {
                FiniteComplex::cone(&self.source.value(c), &self.target.value(c), &self.value(c)).map(|k| k.is_acyclic()).unwrap_or(false)
            })
    }
}

pub(crate) fn cone_matrix(x: &TwistedComplex, y: &TwistedComplex, f: &HomMatrix) -> TwistedComplex {
    // x[1] already carries -δ_x.
    let sx = x.shift(1);
    let mut gens = sx.gens.clone();
    gens.extend_from_slice(&y.gens);
    let n = x.len();
    let delta = sx.delta.add(&f.offset(n, 0)).add(&y.delta.offset(n, n));
    TwistedComplex { cat: x.cat.clone(), gens, delta }
}

/// A degree `-1` map `h` witnessing `f - g = d(h)`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub h: ChainMorphism,
}

impl Homotopy {
    pub fn witnesses(&self, f: &ChainMorphism, g: &ChainMorphism) -> bool {
        self.h.degree == f.degree - 1
            && f.degree == g.degree
            && f.matrix.axpy(&-f.source.field().one(), &g.matrix) == self.h.differential().matrix
    }
}
