//! Sparse vectors and column-stored linear maps.
//!
//! Every higher layer builds its differentials as [`LinMap`]s; the dense
//! [`Matrix`](super::Matrix) is only the public interchange format.

use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};

/// Sorted `(index, coefficient)` pairs with no zero coefficients.
pub type SVec = Vec<(usize, Scalar)>;

/// `a + c·b`.
pub fn axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SVec {
    if c.is_zero() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &[(usize, Scalar)], c: &Scalar) -> SVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

pub fn get(v: &[(usize, Scalar)], i: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&i, |e| e.0).ok().map(|k| &v[k].1)
}

/// Builds an [`SVec`] from unsorted, possibly repeated entries.
pub fn collect(field: Field, entries: impl IntoIterator<Item = (usize, Scalar)>) -> SVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, x) in entries {
        if x.is_zero() {
            continue;
        }
        let slot = acc.entry(i).or_insert_with(|| field.zero());
        *slot += &x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Re-indexes entries through `f` (which must be injective and monotone
/// for the result to stay sorted; otherwise the result is re-sorted).
pub fn reindex(v: &[(usize, Scalar)], f: impl Fn(usize) -> usize) -> SVec {
    let mut out: SVec = v.iter().map(|(i, x)| (f(*i), x.clone())).collect();
    if out.windows(2).any(|w| w[0].0 >= w[1].0) {
        out.sort_by_key(|e| e.0);
    }
    out
}

/// A linear map `k^cols → k^rows`, stored as the images of the basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<SVec>,
}

impl LinMap {
    pub fn zero(field: Field, rows: usize, cols: usize) -> LinMap {
        LinMap { field, rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(field: Field, n: usize) -> LinMap {
        LinMap { field, rows: n, cols: n, columns: (0..n).map(|i| vec![(i, field.one())]).collect() }
    }

    pub fn from_columns(field: Field, rows: usize, columns: Vec<SVec>) -> LinMap {
        debug_assert!(columns.iter().all(|c| c.iter().all(|(i, x)| *i < rows && !x.is_zero())));
        LinMap { field, rows, cols: columns.len(), columns }
    }

    /// Accumulates entries `(row, col, value)`.
    pub fn from_triplets(field: Field, rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Scalar)>) -> LinMap {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
        for (r, c, x) in entries {
            debug_assert!(r < rows && c < cols);
            buckets[c].push((r, x));
        }
        let columns = buckets.into_iter().map(|b| collect(field, b)).collect();
        LinMap { field, rows, cols, columns }
    }

    pub fn apply(&self, v: &[(usize, Scalar)]) -> SVec {
        let mut acc: SVec = Vec::new();
        for (j, x) in v {
            acc = axpy(&acc, x, &self.columns[*j]);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        assert_eq!(self.cols, other.rows, "compose: dimension mismatch");
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        LinMap { field: self.field, rows: self.rows, cols: other.cols, columns }
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        self.axpy(&self.field.one(), other)
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &Scalar, other: &LinMap) -> LinMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "axpy: shape mismatch");
        let columns = self.columns.iter().zip(&other.columns).map(|(a, b)| axpy(a, c, b)).collect();
        LinMap { field: self.field, rows: self.rows, cols: self.cols, columns }
    }

    pub fn scaled(&self, c: &Scalar) -> LinMap {
        let columns = self.columns.iter().map(|v| scale(v, c)).collect();
        LinMap { field: self.field, rows: self.rows, cols: self.cols, columns }
    }

    pub fn neg(&self) -> LinMap {
        self.scaled(&-self.field.one())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> LinMap {
        let mut cols: Vec<SVec> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c {
                cols[*i].push((j, x.clone()));
            }
        }
        LinMap { field: self.field, rows: self.cols, cols: self.rows, columns: cols }
    }

    /// Restriction to the given source columns and target rows (row list must be sorted).
    pub fn block(&self, row_idx: &[usize], col_idx: &[usize]) -> LinMap {
        let mut pos = vec![usize::MAX; self.rows];
        for (k, r) in row_idx.iter().enumerate() {
            pos[*r] = k;
        }
        let columns = col_idx
            .iter()
            .map(|c| self.columns[*c].iter().filter(|(i, _)| pos[*i] != usize::MAX).map(|(i, x)| (pos[*i], x.clone())).collect::<SVec>())
            .map(|mut v| {
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        LinMap { field: self.field, rows: row_idx.len(), cols: col_idx.len(), columns }
    }

    /// Entry `(i, j)`, zero if absent.
    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        get(&self.columns[j], i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field, self.rows);
        for c in &self.columns {
            e.insert(c.clone());
        }
        e.rank()
    }

    /// A basis of the kernel, via the reduced row echelon form.
    pub fn kernel(&self) -> Vec<SVec> {
        let rref = Rref::of_rows(self.field, self.cols, &self.transpose().columns);
        rref.null_space()
    }

    /// Some `x` with `self · x = b`.
    pub fn solve(&self, b: &[(usize, Scalar)]) -> Option<SVec> {
        let mut e = Echelon::tracked(self.field, self.rows);
        for (j, c) in self.columns.iter().enumerate() {
            let _ = e.insert_tracked(c.clone(), vec![(j, self.field.one())]);
        }
        e.express(b)
    }
}

/// Row-echelon basis of a growing subspace of `k^n`.
///
/// Rows are stored with leading coefficient 1. When tracking is on, each
/// row also remembers which combination of inserted vectors produced it,
/// so membership queries can return coordinates.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<SVec>,
    track: Option<Vec<SVec>>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Echelon {
        Echelon { field, dim, rows: Vec::new(), track: None, pivot_row: BTreeMap::new() }
    }

    pub fn tracked(field: Field, dim: usize) -> Echelon {
        Echelon { track: Some(Vec::new()), ..Echelon::new(field, dim) }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against every stored pivot. Returns the residue and, if
    /// tracking, the combination subtracted.
    fn reduce(&self, mut v: SVec, mut comb: SVec) -> (SVec, SVec) {
        let mut k = 0;
        while k < v.len() {
            let (idx, ref x) = v[k];
            if let Some(&r) = self.pivot_row.get(&idx) {
                let c = -x;
                v = axpy(&v, &c, &self.rows[r]);
                if let Some(t) = &self.track {
                    comb = axpy(&comb, &c, &t[r]);
                }
                // v[k] is now gone; entries before k are untouched.
                continue;
            }
            k += 1;
        }
        (v, comb)
    }

    /// Residue of `v` modulo the span (a canonical normal form).
    pub fn residue(&self, v: &[(usize, Scalar)]) -> SVec {
        self.reduce(v.to_vec(), Vec::new()).0
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.residue(v).is_empty()
    }

    /// Inserts `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: SVec) -> bool {
        self.insert_tracked(v, Vec::new()).is_ok()
    }

    /// Inserts `v` labelled by `tag` (a combination of caller-side labels).
    /// On dependency returns the combination that vanishes.
    pub fn insert_tracked(&mut self, v: SVec, tag: SVec) -> Result<(), SVec> {
        let (res, comb) = self.reduce(v, tag);
        if res.is_empty() {
            return Err(comb);
        }
        let inv = res[0].1.inv().expect("nonzero leading coefficient");
        let row = scale(&res, &inv);
        self.pivot_row.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        if let Some(t) = &mut self.track {
            t.push(scale(&comb, &inv));
        }
        Ok(())
    }

    /// Tag combination of a vector in the span (`None` if outside it).
    pub fn express(&self, v: &[(usize, Scalar)]) -> Option<SVec> {
        assert!(self.track.is_some(), "express needs a tracked echelon");
        let (res, comb) = self.reduce(v.to_vec(), Vec::new());
        if res.is_empty() {
            Some(scale(&comb, &-self.field.one()))
        } else {
            None
        }
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }
}

/// Reduced row echelon form of a set of rows.
#[derive(Clone, Debug)]
pub struct Rref {
    field: Field,
    width: usize,
    /// `(pivot, row)` sorted by pivot; each row is zero at every other pivot.
    rows: Vec<(usize, SVec)>,
}

impl Rref {
    pub fn of_rows(field: Field, width: usize, rows: &[SVec]) -> Rref {
        let mut e = Echelon::new(field, width);
        for r in rows {
            e.insert(r.clone());
        }
        let mut order: Vec<(usize, usize)> = e.pivot_row.iter().map(|(p, r)| (*p, *r)).collect();
        order.sort();
        let mut done: Vec<(usize, SVec)> = Vec::with_capacity(order.len());
        let mut done_at: BTreeMap<usize, usize> = BTreeMap::new();
        for &(p, r) in order.iter().rev() {
            let mut v = e.rows[r].clone();
            let mut k = 1;
            while k < v.len() {
                if let Some(&d) = done_at.get(&v[k].0) {
                    let c = -&v[k].1;
                    v = axpy(&v, &c, &done[d].1);
                    continue;
                }
                k += 1;
            }
            done_at.insert(p, done.len());
            done.push((p, v));
        }
        done.reverse();
        Rref { field, width, rows: done }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis of `{x : row · x = 0 for all rows}`, one vector per free column.
    pub fn null_space(&self) -> Vec<SVec> {
        let pivots: Vec<usize> = self.rows.iter().map(|r| r.0).collect();
        let mut is_pivot = vec![false; self.width];
        for p in &pivots {
            is_pivot[*p] = true;
        }
        // Column f of the row block, gathered once.
        let mut free_entries: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (p, row) in &self.rows {
            for (j, x) in row.iter().skip(1) {
                free_entries.entry(*j).or_default().push((*p, -x));
            }
        }
        (0..self.width)
            .filter(|f| !is_pivot[*f])
            .map(|f| {
                let mut v = free_entries.remove(&f).unwrap_or_default();
                v.push((f, self.field.one()));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rational.int(n)
    }

    #[test]
    fn axpy_cancels() {
        let a = vec![(0, q(1)), (2, q(3))];
        let b = vec![(2, q(1)), (5, q(1))];
        assert_eq!(axpy(&a, &q(-3), &b), vec![(0, q(1)), (5, q(-3))]);
    }

    #[test]
    fn kernel_of_row() {
        let m = LinMap::from_triplets(Field::Rational, 1, 2, [(0, 0, q(1)), (0, 1, q(1))]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).is_empty());
    }

    #[test]
    fn solve_roundtrip() {
        let f = Field::Rational;
        let m = LinMap::from_triplets(f, 2, 3, [(0, 0, q(2)), (1, 1, q(1)), (1, 2, q(1))]);
        let b = vec![(0, q(1)), (1, q(5))];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let m2 = LinMap::zero(f, 2, 2);
        assert!(m2.solve(&b).is_none());
    }

    #[test]
    fn tracked_dependency() {
        let f = Field::Rational;
        let mut e = Echelon::tracked(f, 3);
        e.insert_tracked(vec![(0, q(1)), (1, q(1))], vec![(0, q(1))]).unwrap();
        e.insert_tracked(vec![(1, q(1)), (2, q(1))], vec![(1, q(1))]).unwrap();
        let dep = e.insert_tracked(vec![(0, q(1)), (1, q(2)), (2, q(1))], vec![(2, q(1))]).unwrap_err();
        assert_eq!(dep, vec![(0, q(-1)), (1, q(-1)), (2, q(1))]);
    }
}
