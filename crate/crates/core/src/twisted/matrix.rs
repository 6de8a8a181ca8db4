use std::collections::BTreeMap;

use crate::dgcat::DGCategory;
use crate::exactlinalg::sparse::{axpy, scale};
use crate::exactlinalg::{Field, SVec, Scalar};

/// A generator `h^obj[shift]` of a one-sided twisted complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub obj: usize,
    pub shift: i64,
}

impl Gen {
    pub fn new(obj: usize, shift: i64) -> Gen {
        Gen { obj, shift }
    }
}

/// A matrix of morphisms: entry `(j, i)` lies in `hom(src_i, tgt_j)`.
///
/// Composition is the plain matrix product; every sign convention lives in
/// the constructions that produce the entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomMatrix {
    entries: BTreeMap<(usize, usize), SVec>,
}

impl HomMatrix {
    pub fn new() -> HomMatrix {
        HomMatrix::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, usize), SVec)>) -> HomMatrix {
        let mut m = HomMatrix::new();
        for ((j, i), v) in entries {
            m.add_to(j, i, &v);
        }
        m
    }

    /// `diag(units)` on the given objects.
    pub fn identity(cat: &DGCategory, objs: &[usize]) -> HomMatrix {
        HomMatrix::from_entries(objs.iter().enumerate().map(|(k, o)| ((k, k), cat.unit(*o).clone())))
    }

    pub fn get(&self, j: usize, i: usize) -> Option<&SVec> {
        self.entries.get(&(j, i))
    }

    pub fn entry(&self, j: usize, i: usize) -> SVec {
        self.entries.get(&(j, i)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, j: usize, i: usize, v: SVec) {
        if v.is_empty() {
            self.entries.remove(&(j, i));
        } else {
            self.entries.insert((j, i), v);
        }
    }

    pub fn add_to(&mut self, j: usize, i: usize, v: &[(usize, Scalar)]) {
        if v.is_empty() {
            return;
        }
        let one = v[0].1.field().one();
        self.axpy_entry(j, i, &one, v);
    }

    pub fn axpy_entry(&mut self, j: usize, i: usize, c: &Scalar, v: &[(usize, Scalar)]) {
        let cur = self.entries.remove(&(j, i)).unwrap_or_default();
        let new = axpy(&cur, c, v);
        if !new.is_empty() {
            self.entries.insert((j, i), new);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &SVec)> {
        self.entries.iter().map(|((j, i), v)| (*j, *i, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn scaled(&self, c: &Scalar) -> HomMatrix {
        if c.is_zero() {
            return HomMatrix::new();
        }
        HomMatrix { entries: self.entries.iter().map(|(k, v)| (*k, scale(v, c))).collect() }
    }

    pub fn neg(&self) -> HomMatrix {
        HomMatrix { entries: self.entries.iter().map(|(k, v)| (*k, v.iter().map(|(i, x)| (*i, -x)).collect())).collect() }
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &Scalar, other: &HomMatrix) -> HomMatrix {
        let mut out = self.clone();
        for (j, i, v) in other.iter() {
            out.axpy_entry(j, i, c, v);
        }
        out
    }

    pub fn add(&self, other: &HomMatrix) -> HomMatrix {
        let mut out = self.clone();
        for (j, i, v) in other.iter() {
            out.add_to(j, i, v);
        }
        out
    }

    /// Multiplies entry `(j, i)` by `sign(j, i)`, a ±1 given as a parity.
    pub fn signed_by(&self, field: Field, parity: impl Fn(usize, usize) -> i64) -> HomMatrix {
        HomMatrix {
            entries: self
                .entries
                .iter()
                .map(|((j, i), v)| {
                    let s = field.one().signed(parity(*j, *i));
                    ((*j, *i), scale(v, &s))
                })
                .collect(),
        }
    }

    /// Moves every entry by `(dj, di)`.
    pub fn offset(&self, dj: usize, di: usize) -> HomMatrix {
        HomMatrix { entries: self.entries.iter().map(|((j, i), v)| ((j + dj, i + di), v.clone())).collect() }
    }

    /// Re-indexes rows and columns through the given maps.
    pub fn reindexed(&self, row: impl Fn(usize) -> usize, col: impl Fn(usize) -> usize) -> HomMatrix {
        HomMatrix { entries: self.entries.iter().map(|((j, i), v)| ((row(*j), col(*i)), v.clone())).collect() }
    }

    /// Keeps the entries with row in `rows` and column in `cols`, renumbered
    /// by position in those lists.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> HomMatrix {
        let rpos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(k, r)| (*r, k)).collect();
        let cpos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        HomMatrix { entries: self.entries.iter().filter_map(|((j, i), v)| Some(((*rpos.get(j)?, *cpos.get(i)?), v.clone()))).collect() }
    }

    /// `self ∘ first`, where `first: X → Y` and `self: Y → Z` (objects given per index).
    pub fn compose(&self, first: &HomMatrix, cat: &DGCategory, x: &[usize], y: &[usize], z: &[usize]) -> HomMatrix {
        let mut by_row: BTreeMap<usize, Vec<(usize, &SVec)>> = BTreeMap::new();
        for ((j, i), v) in &first.entries {
            by_row.entry(*j).or_default().push((*i, v));
        }
        let mut out = HomMatrix::new();
        for ((k, j), g) in &self.entries {
            if let Some(fs) = by_row.get(j) {
                for (i, f) in fs {
                    let c = cat.compose(x[*i], y[*j], z[*k], g, f);
                    out.add_to(*k, *i, &c);
                }
            }
        }
        out
    }

    /// Entrywise differential `d(F_ji)`.
    pub fn d_entries(&self, cat: &DGCategory, src: &[usize], tgt: &[usize]) -> HomMatrix {
        HomMatrix::from_entries(self.entries.iter().map(|((j, i), v)| ((*j, *i), cat.d(src[*i], tgt[*j], v))))
    }

    /// Checks every nonzero entry is homogeneous of degree `deg(j, i)`.
    pub fn has_degrees(
        &self,
        cat: &DGCategory,
        src: &[usize],
        tgt: &[usize],
        deg: impl Fn(usize, usize) -> i64,
    ) -> Result<(), (usize, usize)> {
        for ((j, i), v) in &self.entries {
            match cat.elem_degree(src[*i], tgt[*j], v) {
                Some(d) if d == deg(*j, *i) => {}
                _ => return Err((*j, *i)),
            }
        }
        Ok(())
    }
}
