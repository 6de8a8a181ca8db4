//! Graded vector spaces and finite cochain complexes (differential of degree +1).

use std::collections::BTreeMap;
use std::fmt;

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use super::sparse::{Echelon, LinMap, SVec};
use super::LinalgError;

/// Finite-support graded dimensions; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedVectorSpace {
    dims: BTreeMap<i64, usize>,
}

impl GradedVectorSpace {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut dims = BTreeMap::new();
        for (d, n) in pairs {
            *dims.entry(d).or_insert(0) += n;
        }
        dims.retain(|_, n| *n > 0);
        GradedVectorSpace { dims }
    }

    /// Graded dimensions of a basis with the given degrees.
    pub fn of_degrees(degs: &[i64]) -> Self {
        Self::from_pairs(degs.iter().map(|d| (*d, 1)))
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn euler(&self) -> i64 {
        self.dims.iter().map(|(d, n)| if d.rem_euclid(2) == 0 { *n as i64 } else { -(*n as i64) }).sum()
    }

    /// `(V[n])^i = V^{i+n}`: degree `k` moves to `k - n`.
    pub fn shift(&self, n: i64) -> Self {
        Self::from_pairs(self.dims.iter().map(|(d, m)| (d - n, *m)))
    }

    pub fn dual(&self) -> Self {
        Self::from_pairs(self.dims.iter().map(|(d, m)| (-d, *m)))
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::from_pairs(self.dims.iter().chain(other.dims.iter()).map(|(d, m)| (*d, *m)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.dims.iter().map(|(d, n)| (*d, *n))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }
}

/// Serialized as rows `{"degree": n, "dim": d}` in increasing degree.
impl serde::Serialize for GradedVectorSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        #[derive(serde::Serialize)]
        struct Row {
            degree: i64,
            dim: usize,
        }
        let mut seq = s.serialize_seq(Some(self.dims.len()))?;
        for (&degree, &dim) in &self.dims {
            seq.serialize_element(&Row { degree, dim })?;
        }
        seq.end()
    }
}

impl fmt::Display for GradedVectorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|(d, n)| format!("{d}:{n}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A finite complex stored as a graded basis plus one square differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteComplex {
    degs: Vec<i64>,
    d: LinMap,
}

impl FiniteComplex {
    /// Validates degree compatibility and `d² = 0`.
    pub fn from_basis(degs: Vec<i64>, d: LinMap) -> Result<Self, LinalgError> {
        assert_eq!((d.rows, d.cols), (degs.len(), degs.len()), "differential shape");
        let c = FiniteComplex { degs, d };
        c.check()?;
        Ok(c)
    }

    /// For callers whose construction guarantees the invariants (checked in debug builds).
    pub fn from_basis_unchecked(degs: Vec<i64>, d: LinMap) -> Self {
        assert_eq!((d.rows, d.cols), (degs.len(), degs.len()), "differential shape");
        let c = FiniteComplex { degs, d };
        debug_assert!(c.check().is_ok(), "{:?}", c.check());
        c
    }

    pub fn zero(field: Field) -> Self {
        FiniteComplex { degs: Vec::new(), d: LinMap::zero(field, 0, 0) }
    }

    /// Complex from per-degree dense blocks `d_n : C^n → C^{n+1}`.
    pub fn new(spaces: &GradedVectorSpace, differentials: &BTreeMap<i64, Matrix>, field: Field) -> Result<Self, LinalgError> {
        let mut offset = BTreeMap::new();
        let mut degs = Vec::new();
        for (n, k) in spaces.iter() {
            offset.insert(n, degs.len());
            degs.extend(std::iter::repeat(n).take(k));
        }
        let mut trip = Vec::new();
        for (n, m) in differentials {
            let (src, tgt) = (spaces.dim(*n), spaces.dim(n + 1));
            if m.rows() != tgt || m.cols() != src {
                return Err(LinalgError::DimensionMismatch(format!("d_{n} is {}x{}, expected {tgt}x{src}", m.rows(), m.cols())));
            }
            for i in 0..tgt {
                for j in 0..src {
                    let x = m.get(i, j);
                    if !x.is_zero() {
                        trip.push((offset[&(n + 1)] + i, offset[n] + j, x.clone()));
                    }
                }
            }
        }
        let n = degs.len();
        Self::from_basis(degs, LinMap::from_triplets(field, n, n, trip))
    }

    fn check(&self) -> Result<(), LinalgError> {
        for (j, col) in self.d.columns.iter().enumerate() {
            if let Some((i, _)) = col.iter().find(|(i, _)| self.degs[*i] != self.degs[j] + 1) {
                return Err(LinalgError::DimensionMismatch(format!(
                    "differential maps basis {j} (degree {}) to basis {i} (degree {})",
                    self.degs[j], self.degs[*i]
                )));
            }
        }
        let dd = self.d.compose(&self.d);
        if let Some((j, col)) = dd.columns.iter().enumerate().find(|(_, c)| !c.is_empty()) {
            return Err(LinalgError::NotAComplex { degree: self.degs[j], witness: format!("d²(e_{j}) = {:?}", col) });
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.d.field
    }

    pub fn dim(&self) -> usize {
        self.degs.len()
    }

    pub fn degs(&self) -> &[i64] {
        &self.degs
    }

    pub fn d(&self) -> &LinMap {
        &self.d
    }

    pub fn spaces(&self) -> GradedVectorSpace {
        GradedVectorSpace::of_degrees(&self.degs)
    }

    pub fn indices_in_degree(&self, n: i64) -> Vec<usize> {
        (0..self.degs.len()).filter(|i| self.degs[*i] == n).collect()
    }

    fn by_degree(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut m: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, d) in self.degs.iter().enumerate() {
            m.entry(*d).or_default().push(i);
        }
        m
    }

    /// Block `d_n : C^n → C^{n+1}` in the order of [`Self::indices_in_degree`].
    pub fn differential(&self, n: i64) -> Matrix {
        let src = self.indices_in_degree(n);
        let tgt = self.indices_in_degree(n + 1);
        Matrix::from_linmap(&self.d.block(&tgt, &src))
    }

    /// `(C[n])^i = C^{i+n}`, differential `(-1)^n d`.
    pub fn shift(&self, n: i64) -> Self {
        let d = if n.rem_euclid(2) == 1 { self.d.neg() } else { self.d.clone() };
        FiniteComplex { degs: self.degs.iter().map(|x| x - n).collect(), d }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim();
        let mut degs = self.degs.clone();
        degs.extend_from_slice(&other.degs);
        let mut columns = self.d.columns.clone();
        columns.extend(other.d.columns.iter().map(|c| c.iter().map(|(i, x)| (i + n, x.clone())).collect()));
        FiniteComplex { d: LinMap::from_columns(self.field(), degs.len(), columns), degs }
    }

    /// `cone(f) = src[1] ⊕ tgt` with `d = [[-d_src, 0], [f, d_tgt]]`; `f` must be a
    /// degree-0 chain map.
    pub fn cone(src: &Self, tgt: &Self, f: &LinMap) -> Result<Self, LinalgError> {
        if f.cols != src.dim() || f.rows != tgt.dim() {
            return Err(LinalgError::DimensionMismatch("cone: map shape".into()));
        }
        let lhs = tgt.d.compose(f);
        let rhs = f.compose(&src.d);
        if lhs != rhs {
            return Err(LinalgError::NotAChainMap);
        }
        let n = src.dim();
        let mut degs: Vec<i64> = src.degs.iter().map(|x| x - 1).collect();
        degs.extend_from_slice(&tgt.degs);
        let mut columns: Vec<SVec> = Vec::with_capacity(degs.len());
        for j in 0..n {
            let mut c: SVec = src.d.columns[j].iter().map(|(i, x)| (*i, -x)).collect();
            c.extend(f.columns[j].iter().map(|(i, x)| (i + n, x.clone())));
            columns.push(c);
        }
        for c in &tgt.d.columns {
            columns.push(c.iter().map(|(i, x)| (i + n, x.clone())).collect());
        }
        Self::from_basis(degs.clone(), LinMap::from_columns(src.field(), degs.len(), columns))
    }

    pub fn euler(&self) -> i64 {
        self.spaces().euler()
    }

    /// Homology dimensions from ranks only.
    pub fn homology_dims(&self) -> GradedVectorSpace {
        let groups = self.by_degree();
        let mut rank_out: BTreeMap<i64, usize> = BTreeMap::new();
        for (n, src) in &groups {
            let r = match groups.get(&(n + 1)) {
                Some(tgt) => self.d.block(tgt, src).rank(),
                None => 0,
            };
            rank_out.insert(*n, r);
        }
        GradedVectorSpace::from_pairs(groups.iter().map(|(n, src)| {
            let into = rank_out.get(&(n - 1)).copied().unwrap_or(0);
            (*n, src.len() - rank_out[n] - into)
        }))
    }

    /// Stops at the first degree with nonzero homology.
    pub fn is_acyclic(&self) -> bool {
        let groups = self.by_degree();
        let mut prev: Option<(i64, usize)> = None;
        for (n, src) in &groups {
            let r = match groups.get(&(n + 1)) {
                Some(tgt) => self.d.block(tgt, src).rank(),
                None => 0,
            };
            let into = match prev {
                Some((m, r)) if m == n - 1 => r,
                _ => 0,
            };
            if src.len() != r + into {
                return false;
            }
            prev = Some((*n, r));
        }
        true
    }

    /// Full homology with representatives.
    pub fn homology(&self) -> Homology {
        let field = self.field();
        let groups = self.by_degree();
        let mut out = BTreeMap::new();
        for (n, src) in &groups {
            let cycles_local = match groups.get(&(n + 1)) {
                Some(tgt) => self.d.block(tgt, src).kernel(),
                None => (0..src.len()).map(|i| vec![(i, field.one())]).collect(),
            };
            let lift = |v: &SVec| -> SVec { v.iter().map(|(i, x)| (src[*i], x.clone())).collect() };
            let mut ech = Echelon::tracked(field, self.dim());
            if let Some(prev) = groups.get(&(n - 1)) {
                for j in prev {
                    let _ = ech.insert_tracked(self.d.columns[*j].clone(), Vec::new());
                }
            }
            let mut reps = Vec::new();
            for z in &cycles_local {
                let g = lift(z);
                let tag = vec![(reps.len(), field.one())];
                if ech.insert_tracked(g.clone(), tag).is_ok() {
                    reps.push(g);
                }
            }
            if !reps.is_empty() {
                out.insert(*n, HomologyDegree { reps, classifier: ech });
            }
        }
        Homology { field, parts: out }
    }
}

#[derive(Clone, Debug)]
struct HomologyDegree {
    reps: Vec<SVec>,
    classifier: Echelon,
}

/// Homology with a chosen basis of representative cycles per degree.
#[derive(Clone, Debug)]
pub struct Homology {
    field: Field,
    parts: BTreeMap<i64, HomologyDegree>,
}

impl Homology {
    pub fn dims(&self) -> GradedVectorSpace {
        GradedVectorSpace::from_pairs(self.parts.iter().map(|(n, p)| (*n, p.reps.len())))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Representative cycles (in the complex's basis) of degree `n`.
    pub fn reps(&self, n: i64) -> &[SVec] {
        self.parts.get(&n).map_or(&[], |p| p.reps.as_slice())
    }

    /// Coordinates of the class of the degree-`n` cycle `z` in the chosen basis.
    /// `None` if `z` is not a cycle-plus-boundary combination of the basis.
    pub fn class_of(&self, n: i64, z: &[(usize, Scalar)]) -> Option<SVec> {
        match self.parts.get(&n) {
            Some(p) => p.classifier.express(z),
            None => {
                if z.is_empty() {
                    Some(Vec::new())
                } else {
                    None
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn zero_differential_keeps_dims() {
        let c = FiniteComplex::from_basis(vec![0, 2], LinMap::zero(Q, 2, 2)).unwrap();
        assert_eq!(c.homology().dims(), GradedVectorSpace::from_pairs([(0, 1), (2, 1)]));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = FiniteComplex::from_basis(vec![0, 1, 1], LinMap::zero(Q, 3, 3)).unwrap();
        let cone = FiniteComplex::cone(&c, &c, &LinMap::identity(Q, 3)).unwrap();
        assert!(cone.homology_dims().is_zero());
        assert!(cone.is_acyclic());
    }

    #[test]
    fn two_term_zero_map() {
        let mut blocks = BTreeMap::new();
        blocks.insert(0, Matrix::zero(Q, 1, 1));
        let c = FiniteComplex::new(&GradedVectorSpace::from_pairs([(0, 1), (1, 1)]), &blocks, Q).unwrap();
        assert_eq!(c.homology_dims(), GradedVectorSpace::from_pairs([(0, 1), (1, 1)]));
    }

    #[test]
    fn rejects_non_complex() {
        let d = LinMap::from_triplets(Q, 3, 3, [(1, 0, Q.int(1)), (2, 1, Q.int(1))]);
        assert!(matches!(FiniteComplex::from_basis(vec![0, 1, 2], d), Err(LinalgError::NotAComplex { .. })));
    }

    #[test]
    fn class_coordinates() {
        // k → k² → k with d0 = (1,0)ᵗ, d1 = (0 0): H¹ = k spanned by e2.
        let d = LinMap::from_triplets(Q, 3, 3, [(1, 0, Q.int(1))]);
        let c = FiniteComplex::from_basis(vec![0, 1, 1], d).unwrap();
        let h = c.homology();
        assert_eq!(h.dims(), GradedVectorSpace::from_pairs([(1, 1)]));
        let z = vec![(1, Q.int(5)), (2, Q.int(3))];
        let coords = h.class_of(1, &z).unwrap();
        let rep = &h.reps(1)[0];
        let expected = crate::exactlinalg::sparse::scale(rep, &coords[0].1);
        assert_eq!(crate::exactlinalg::sparse::get(&expected, 2), Some(&Q.int(3)));
    }
}
