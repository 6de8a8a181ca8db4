//! Closed-map spaces and seeded searches for quasi-isomorphisms.
//!
//! A search solves the linear closedness and compatibility constraints
//! exactly, then tries hint maps followed by random integer combinations of
//! the solution basis; the first one whose slotwise cones are acyclic is
//! returned with a certificate recording how it was found.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dgcat::{Bimod, BimodMap};
use crate::exactlinalg::{sparse, Field, FiniteComplex, LinMap, SVec, Scalar};

use super::bimodule::{assemble_blocks, TCBimodule, TcMap};
use super::complex::TwistedComplex;
use super::matrix::HomMatrix;

/// Random attempts made after the hints are exhausted.
pub const DEFAULT_ATTEMPTS: usize = 24;

thread_local! {
    static ATTEMPTS: std::cell::Cell<usize> = const { std::cell::Cell::new(DEFAULT_ATTEMPTS) };
}

/// The number of random attempts searches on this thread make.
pub fn attempt_budget() -> usize {
    ATTEMPTS.with(|a| a.get())
}

/// Runs `f` with the attempt budget of this thread set to `n`.
pub fn with_attempt_budget<R>(n: usize, f: impl FnOnce() -> R) -> R {
    let old = ATTEMPTS.with(|a| a.replace(n));
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            ATTEMPTS.with(|a| a.set(self.0));
        }
    }
    let _restore = Restore(old);
    f()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub method: String,
    /// Index of the accepted candidate; hints come first.
    pub attempt: usize,
    pub seed: u64,
    /// Dimension of the space of closed compatible maps searched.
    pub closed_dim: usize,
}

#[derive(Clone, Debug)]
pub enum QisoSearch<M> {
    Found { map: M, cert: Certificate },
    Inconclusive { attempts: usize, closed_dim: usize },
}

impl<M> QisoSearch<M> {
    pub fn is_found(&self) -> bool {
        matches!(self, QisoSearch::Found { .. })
    }

    pub fn map(&self) -> Option<&M> {
        match self {
            QisoSearch::Found { map, .. } => Some(map),
            QisoSearch::Inconclusive { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            QisoSearch::Found { cert, .. } => Some(cert),
            QisoSearch::Inconclusive { .. } => None,
        }
    }
}

/// Tries each hint, then `attempts` random combinations of `basis` with
/// coefficients in `[-3, 3]`. Returns the accepted vector and its index.
pub fn closed_combinations(
    field: Field,
    basis: &[SVec],
    hints: &[SVec],
    seed: u64,
    attempts: usize,
    mut accept: impl FnMut(&SVec) -> bool,
) -> Option<(SVec, usize)> {
    for (k, h) in hints.iter().enumerate() {
        if accept(h) {
            return Some((h.clone(), k));
        }
    }
    if basis.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..attempts {
        let mut v = SVec::new();
        for b in basis {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                v = sparse::axpy(&v, &field.int(c), b);
            }
        }
        if accept(&v) {
            return Some((v, hints.len() + t));
        }
    }
    None
}

/// Coordinates of maps `X → Y` from a twisted bimodule to an explicit one:
/// one value `y_i ∈ Y(a, o_i)` of degree `p - s_i` per generator.
#[derive(Clone, Debug)]
pub struct YonedaSpace {
    pub deg: i64,
    /// `(a, i, Y-basis indices of the right degree)` per generator.
    blocks: Vec<(usize, usize, Vec<usize>)>,
    offsets: Vec<usize>,
    /// `start[a]` = first block of `a`.
    start: Vec<usize>,
}

impl YonedaSpace {
    pub fn new(x: &TCBimodule, y: &Bimod, p: i64) -> Self {
        let mut blocks = Vec::new();
        let mut offsets = vec![0];
        let mut start = Vec::new();
        for (a, xa) in x.comps().iter().enumerate() {
            start.push(blocks.len());
            for (i, g) in xa.gens().iter().enumerate() {
                let s = y.slot(a, g.obj);
                let ks: Vec<usize> = (0..s.dim()).filter(|&k| s.degs()[k] == p - g.shift).collect();
                offsets.push(offsets.last().unwrap() + ks.len());
                blocks.push((a, i, ks));
            }
        }
        YonedaSpace { deg: p, blocks, offsets, start }
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn block(&self, a: usize, i: usize) -> usize {
        self.start[a] + i
    }

    /// `y_i` for generator `i` of `X_a`, as a vector in `Y(a, o_i)`.
    pub fn value(&self, v: &[(usize, Scalar)], a: usize, i: usize) -> SVec {
        let b = self.block(a, i);
        let (lo, hi) = (self.offsets[b], self.offsets[b + 1]);
        let ks = &self.blocks[b].2;
        v.iter().filter(|(k, _)| *k >= lo && *k < hi).map(|(k, c)| (ks[k - lo], c.clone())).collect()
    }

    /// Coordinates of given values `elems[a][i]`; `None` if some value has
    /// components of the wrong degree.
    pub fn coords(&self, elems: &[Vec<SVec>]) -> Option<SVec> {
        let mut out = Vec::new();
        for (b, (a, i, ks)) in self.blocks.iter().enumerate() {
            for (k, c) in &elems[*a][*i] {
                let pos = ks.binary_search(k).ok()?;
                out.push((self.offsets[b] + pos, c.clone()));
            }
        }
        out.sort_by_key(|e| e.0);
        Some(out)
    }

    /// The linear constraints whose kernel is the closed compatible maps.
    pub fn constraints(&self, x: &TCBimodule, y: &Bimod) -> LinMap {
        let fld = y.field();
        let la = x.left();
        let p = self.deg;
        // Row blocks: closedness per (a, i) in Y(a, o_i), then compatibility
        // per (a, a2, f, i) in Y(a2, o_i).
        let mut row_off = vec![0];
        let mut closed_row = Vec::new();
        for (a, i, _) in &self.blocks {
            closed_row.push(row_off.len() - 1);
            row_off.push(row_off.last().unwrap() + y.slot(*a, x.comp(*a).gens()[*i].obj).dim());
        }
        let mut compat_row = std::collections::BTreeMap::new();
        for a in 0..la.n_objects() {
            for a2 in 0..la.n_objects() {
                for f in 0..la.hom_dim(a, a2) {
                    for (i, g) in x.comp(a).gens().iter().enumerate() {
                        compat_row.insert((a, a2, f, i), row_off.len() - 1);
                        row_off.push(row_off.last().unwrap() + y.slot(a2, g.obj).dim());
                    }
                }
            }
        }
        let mut col_off = vec![0];
        let mut blocks: Vec<(usize, usize, LinMap)> = Vec::new();
        let minus_sp = -fld.one().signed(p);
        for (b, (a, i, ks)) in self.blocks.iter().enumerate() {
            col_off.push(self.offsets[b + 1]);
            let (a, i) = (*a, *i);
            let xa = x.comp(a);
            let oi = xa.gens()[i].obj;
            let slot = y.slot(a, oi);
            let pick = |m: &LinMap| -> LinMap { LinMap::from_columns(fld, m.rows, ks.iter().map(|&k| m.columns[k].clone()).collect()) };
            blocks.push((closed_row[b], b, pick(slot.d())));
            for (r, c, v) in xa.delta().iter() {
                if r == i {
                    let k = xa.gens()[c].obj;
                    let m = y.ract_elem(k, oi, v, a).scaled(&minus_sp);
                    blocks.push((closed_row[self.block(a, c)], b, pick(&m)));
                }
            }
            for a2 in 0..la.n_objects() {
                for f in 0..la.hom_dim(a, a2) {
                    let sign = -fld.one().signed(p * la.deg(a, a2, f));
                    blocks.push((compat_row[&(a, a2, f, i)], b, pick(&y.lact(a, a2, f, oi).scaled(&sign))));
                }
            }
            for a0 in 0..la.n_objects() {
                for f in 0..la.hom_dim(a0, a) {
                    for (r, c, v) in x.rho(a0, a, f).iter() {
                        if r == i {
                            let k = x.comp(a0).gens()[c].obj;
                            blocks.push((compat_row[&(a0, a, f, c)], b, pick(&y.ract_elem(k, oi, v, a))));
                        }
                    }
                }
            }
        }
        assemble_blocks(fld, &row_off, &col_off, blocks)
    }

    /// The chain map of expansions `X.expand() → Y`: `(i, e) ↦ y_i · e`.
    pub fn to_map(&self, x: &TCBimodule, y: &Bimod, v: &[(usize, Scalar)]) -> BimodMap {
        let fld = y.field();
        let nc = x.right().n_objects();
        let mut maps = Vec::new();
        for (a, xa) in x.comps().iter().enumerate() {
            let vals: Vec<SVec> = (0..xa.len()).map(|i| self.value(v, a, i)).collect();
            for c in 0..nc {
                let cols = xa.value_basis(c).into_iter().map(|(i, e)| y.ract(c, xa.gens()[i].obj, e, a).apply(&vals[i])).collect();
                maps.push(LinMap::from_columns(fld, y.slot(a, c).dim(), cols));
            }
        }
        BimodMap { deg: self.deg, maps }
    }
}

/// Basis of the closed compatible maps `X → Y` of degree `p`.
pub fn yoneda_closed_maps(x: &TCBimodule, y: &Bimod, p: i64) -> (YonedaSpace, Vec<SVec>) {
    let sp = YonedaSpace::new(x, y, p);
    let k = sp.constraints(x, y).kernel();
    (sp, k)
}

/// The map determined by explicit generator values `elems[a][i]`.
pub fn yoneda_map(x: &TCBimodule, y: &Bimod, p: i64, elems: &[Vec<SVec>]) -> Option<BimodMap> {
    let sp = YonedaSpace::new(x, y, p);
    let v = sp.coords(elems)?;
    Some(sp.to_map(x, y, &v))
}

/// `Hom(X, Y(a, -))` for a twisted complex `X`: basis `(i, y)` with
/// `y ∈ Y(a, o_i)`, in degree `|y| + s_i`.
pub fn hom_to_explicit(x: &TwistedComplex, y: &Bimod, a: usize) -> FiniteComplex {
    let fld = y.field();
    let mut off = vec![0];
    let mut degs = Vec::new();
    for g in x.gens() {
        let s = y.slot(a, g.obj);
        degs.extend(s.degs().iter().map(|e| e + g.shift));
        off.push(degs.len());
    }
    let mut blocks: Vec<(usize, usize, LinMap)> = Vec::new();
    for (i, g) in x.gens().iter().enumerate() {
        blocks.push((i, i, y.slot(a, g.obj).d().clone()));
    }
    for (j, k, v) in x.delta().iter() {
        // column block j (value y_j), row block k (closedness of generator k)
        let m = y.ract_elem(x.gens()[k].obj, x.gens()[j].obj, v, a);
        let src_degs = &degs[off[j]..off[j + 1]];
        let signed = LinMap::from_columns(
            fld,
            m.rows,
            m.columns.iter().zip(src_degs).map(|(c, &p)| sparse::scale(c, &-fld.one().signed(p))).collect(),
        );
        blocks.push((k, j, signed));
    }
    FiniteComplex::from_basis_unchecked(degs, assemble_blocks(fld, &off, &off, blocks))
}

type Outcome = Result<(SVec, Certificate), (usize, usize)>;

fn search_coords(x: &TCBimodule, y: &Bimod, hints: &[Vec<Vec<SVec>>], seed: u64) -> (YonedaSpace, Outcome) {
    let sp = YonedaSpace::new(x, y, 0);
    let cons = sp.constraints(x, y);
    let basis = cons.kernel();
    let src = x.expand();
    // Hints must satisfy the constraints to count.
    let hints: Vec<SVec> = hints.iter().filter_map(|h| sp.coords(h)).filter(|v| cons.apply(v).is_empty()).collect();
    let closed_dim = basis.len();
    let budget = attempt_budget();
    let found = closed_combinations(y.field(), &basis, &hints, seed, budget, |v| sp.to_map(x, y, v).is_quasi_iso(&src, y));
    let out = match found {
        Some((v, attempt)) => Ok((v, Certificate { method: "yoneda".into(), attempt, seed, closed_dim })),
        None => Err((hints.len() + budget, closed_dim)),
    };
    (sp, out)
}

/// Searches for a degree-0 quasi-isomorphism `X → Y`; `hints` are generator
/// values tried before random combinations.
pub fn find_quasi_iso(x: &TCBimodule, y: &Bimod, hints: &[Vec<Vec<SVec>>], seed: u64) -> QisoSearch<BimodMap> {
    match search_coords(x, y, hints, seed) {
        (sp, Ok((v, cert))) => QisoSearch::Found { map: sp.to_map(x, y, &v), cert },
        (_, Err((attempts, closed_dim))) => QisoSearch::Inconclusive { attempts, closed_dim },
    }
}

/// Quasi-isomorphism search between twisted bimodules; the identity is the
/// first hint when the generators agree.
pub fn find_tc_quasi_iso(x: &TCBimodule, y: &TCBimodule, seed: u64) -> QisoSearch<TcMap> {
    let ye = y.expand();
    let mut hints = Vec::new();
    if x.comps().iter().zip(y.comps()).all(|(a, b)| a.gens() == b.gens()) {
        hints.push(tc_map_values(x, y, &TcMap::identity(x)));
    }
    match search_coords(x, &ye, &hints, seed) {
        (sp, Ok((v, cert))) => {
            let vals: Vec<Vec<SVec>> =
                x.comps().iter().enumerate().map(|(a, xa)| (0..xa.len()).map(|i| sp.value(&v, a, i)).collect()).collect();
            QisoSearch::Found { map: values_to_tc_map(x, y, &vals), cert }
        }
        (_, Err((attempts, closed_dim))) => QisoSearch::Inconclusive { attempts, closed_dim },
    }
}

/// Generator values of a twisted map `F: X → Y`: `y_i = Σ_j (j, F_ji)`.
pub fn tc_map_values(x: &TCBimodule, y: &TCBimodule, f: &TcMap) -> Vec<Vec<SVec>> {
    let cat = y.right();
    x.comps()
        .iter()
        .enumerate()
        .map(|(a, xa)| {
            (0..xa.len())
                .map(|i| {
                    let basis = y.comp(a).value_basis(xa.gens()[i].obj);
                    let mut out = Vec::new();
                    for (j, i2, e) in f.comps[a].iter() {
                        if i2 == i {
                            for (k, c) in e {
                                let pos = basis.iter().position(|&(jj, kk)| jj == j && kk == *k).expect("entry in value basis");
                                out.push((pos, c.clone()));
                            }
                        }
                    }
                    sparse::collect(cat.field(), out)
                })
                .collect()
        })
        .collect()
}

/// Inverse of [`tc_map_values`].
pub fn values_to_tc_map(x: &TCBimodule, y: &TCBimodule, vals: &[Vec<SVec>]) -> TcMap {
    let fld = y.right().field();
    TcMap {
        deg: 0,
        comps: x
            .comps()
            .iter()
            .enumerate()
            .map(|(a, xa)| {
                let mut m = HomMatrix::new();
                for (i, g) in xa.gens().iter().enumerate() {
                    let basis = y.comp(a).value_basis(g.obj);
                    for (pos, c) in &vals[a][i] {
                        let (j, k) = basis[*pos];
                        m.axpy_entry(j, i, c, &[(k, fld.one())]);
                    }
                }
                m
            })
            .collect(),
    }
}

/// Every map with a single nonzero entry between basis vectors whose
/// degrees differ by `p`.
pub fn elementary_maps(src: &Bimod, tgt: &Bimod, p: i64) -> Vec<BimodMap> {
    let fld = src.field();
    let zero = BimodMap::zero(src, tgt, p);
    let mut out = Vec::new();
    for (k, (s, t)) in src.slots().iter().zip(tgt.slots()).enumerate() {
        for (c, dc) in s.degs().iter().enumerate() {
            for (r, dr) in t.degs().iter().enumerate() {
                if *dr == dc + p {
                    let mut m = zero.clone();
                    m.maps[k].columns[c] = vec![(r, fld.one())];
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Basis of the closed compatible maps in the span of `cands`.
pub fn closed_span(cands: &[BimodMap], src: &Bimod, tgt: &Bimod) -> Vec<BimodMap> {
    closed_span_coords(cands, src, tgt).iter().map(|v| combine_coords(cands, v)).collect()
}

fn closed_span_coords(cands: &[BimodMap], src: &Bimod, tgt: &Bimod) -> Vec<SVec> {
    let cols: Vec<SVec> = cands.iter().map(|c| c.defect(src, tgt)).collect();
    let rows = cols.iter().filter_map(|c| c.last().map(|e| e.0 + 1)).max().unwrap_or(0);
    LinMap::from_columns(src.field(), rows, cols).kernel()
}

fn combine_coords(cands: &[BimodMap], v: &[(usize, Scalar)]) -> BimodMap {
    let parts: Vec<(Scalar, &BimodMap)> = v.iter().map(|(k, c)| (c.clone(), &cands[*k])).collect();
    if parts.is_empty() {
        let mut z = cands[0].clone();
        for m in &mut z.maps {
            *m = LinMap::zero(m.field, m.rows, m.cols);
        }
        return z;
    }
    BimodMap::combine(&parts)
}

/// Quasi-isomorphism search between explicit bimodules over the span of
/// `cands` (all elementary maps when `None`). `hints` are tried first and
/// must themselves pass [`BimodMap::check`].
pub fn find_explicit_quasi_iso(
    src: &Bimod,
    tgt: &Bimod,
    hints: &[BimodMap],
    cands: Option<&[BimodMap]>,
    seed: u64,
) -> QisoSearch<BimodMap> {
    for (k, h) in hints.iter().enumerate() {
        if h.check(src, tgt).passed() && h.is_quasi_iso(src, tgt) {
            let cert = Certificate { method: "explicit-hint".into(), attempt: k, seed, closed_dim: 0 };
            return QisoSearch::Found { map: h.clone(), cert };
        }
    }
    let owned;
    let cands = match cands {
        Some(c) => c,
        None => {
            owned = elementary_maps(src, tgt, 0);
            &owned[..]
        }
    };
    if cands.is_empty() {
        return QisoSearch::Inconclusive { attempts: hints.len(), closed_dim: 0 };
    }
    let basis = closed_span_coords(cands, src, tgt);
    let closed_dim = basis.len();
    let budget = attempt_budget();
    let found = closed_combinations(src.field(), &basis, &[], seed, budget, |v| combine_coords(cands, v).is_quasi_iso(src, tgt));
    match found {
        Some((v, t)) => QisoSearch::Found {
            map: combine_coords(cands, &v),
            cert: Certificate { method: "explicit".into(), attempt: hints.len() + t, seed, closed_dim },
        },
        None => QisoSearch::Inconclusive { attempts: hints.len() + budget, closed_dim },
    }
}
