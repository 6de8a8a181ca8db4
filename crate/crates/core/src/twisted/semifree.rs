use std::collections::BTreeSet;

use crate::dgcat::{Bimod, BimodMap};
use crate::exactlinalg::{Echelon, LinMap, SVec};

use super::bimodule::TCBimodule;
use super::complex::TwistedComplex;
use super::matrix::{Gen, HomMatrix};
use super::TwistedError;

/// A twisted bimodule `X` with a strict isomorphism `X.expand() ≅ Y`.
#[derive(Clone, Debug)]
pub struct SemifreeModel {
    pub tc: TCBimodule,
    /// `gens[l][k] ∈ Y(l, o_k)`: the element generator `k` of `X_l` maps to.
    pub gens: Vec<Vec<SVec>>,
    pub comparison: BimodMap,
    pub inverse: BimodMap,
}

impl SemifreeModel {
    /// Coordinates of `v ∈ Y(l, x)` in the value basis of `X_l` at `x`.
    pub fn coords(&self, l: usize, x: usize, v: &[(usize, crate::Scalar)]) -> SVec {
        self.inverse.maps[l * self.tc.right().n_objects() + x].apply(v)
    }
}

/// Recognizes an explicit bimodule that is free as a graded right module.
///
/// Generators are a homogeneous complement of the image of the radical
/// (all basis morphisms other than identities) acting on `Y(l, -)`. The
/// module is accepted when these generators give a graded isomorphism
/// `⊕_k hom(x, o_k) → Y(l, x)` for every `x` and the induced twisting
/// cochain can be ordered strictly lower triangular.
pub fn recognize_semifree(y: &Bimod) -> Result<SemifreeModel, TwistedError> {
    let r = y.right().clone();
    let fld = y.field();
    let nr = r.n_objects();
    let mut unit_idx = Vec::with_capacity(nr);
    for x in 0..nr {
        match r.unit(x).as_slice() {
            [(u, c)] if c.is_one() => unit_idx.push(*u),
            _ => return Err(TwistedError::NotSemifree(format!("unit of {} is not a basis vector", r.objects()[x]))),
        }
    }
    let nl = y.left().n_objects();
    let mut gen_lists = Vec::with_capacity(nl);
    for l in 0..nl {
        let mut gens: Vec<(usize, usize, i64)> = Vec::new();
        for x in 0..nr {
            let slot = y.slot(l, x);
            let mut ech = Echelon::new(fld, slot.dim());
            for z in 0..nr {
                for g in 0..r.hom_dim(x, z) {
                    if z == x && g == unit_idx[x] {
                        continue;
                    }
                    for c in &y.ract(x, z, g, l).columns {
                        ech.insert(c.clone());
                    }
                }
            }
            for k in 0..slot.dim() {
                if ech.insert(vec![(k, fld.one())]) {
                    gens.push((x, k, slot.degs()[k]));
                }
            }
        }
        // Order so the twisting cochain is strictly lower triangular.
        let first = Presentation::build(y, l, &gens)?;
        let order = first.topological_order()?;
        let gens: Vec<_> = order.iter().map(|&k| gens[k]).collect();
        gen_lists.push(gens);
    }
    let pres: Vec<Presentation> = gen_lists.iter().enumerate().map(|(l, g)| Presentation::build(y, l, g)).collect::<Result<_, _>>()?;
    let comps: Vec<TwistedComplex> = pres.iter().map(|p| p.tc.clone()).collect();
    let tc = TCBimodule::new(y.left().clone(), r.clone(), comps, |l, l2, f| {
        let mut m = HomMatrix::new();
        for (k, &(ok, gk, _)) in gen_lists[l].iter().enumerate() {
            let v = y.lact(l, l2, f, ok).apply(&[(gk, fld.one())]);
            pres[l2].express_into(&mut m, k, ok, &v);
        }
        m
    })?;
    let mut comparison = Vec::new();
    let mut inverse = Vec::new();
    for p in &pres {
        comparison.extend(p.phi.iter().cloned());
        inverse.extend(p.phi_inv.iter().cloned());
    }
    Ok(SemifreeModel {
        gens: gen_lists.iter().map(|g| g.iter().map(|&(_, k, _)| vec![(k, fld.one())]).collect()).collect(),
        tc,
        comparison: BimodMap { deg: 0, maps: comparison },
        inverse: BimodMap { deg: 0, maps: inverse },
    })
}

struct Presentation {
    tc: TwistedComplex,
    phi: Vec<LinMap>,
    phi_inv: Vec<LinMap>,
}

impl Presentation {
    fn build(y: &Bimod, l: usize, gens: &[(usize, usize, i64)]) -> Result<Presentation, TwistedError> {
        let r = y.right().clone();
        let fld = y.field();
        let tgens: Vec<Gen> = gens.iter().map(|&(o, _, d)| Gen::new(o, -d)).collect();
        let shell = TwistedComplex::from_parts_unchecked(r.clone(), tgens.clone(), HomMatrix::new());
        let mut phi = Vec::with_capacity(r.n_objects());
        let mut phi_inv = Vec::with_capacity(r.n_objects());
        for x in 0..r.n_objects() {
            let cols: Vec<SVec> =
                shell.value_basis(x).into_iter().map(|(k, e)| y.ract(x, gens[k].0, e, l).apply(&[(gens[k].1, fld.one())])).collect();
            let m = LinMap::from_columns(fld, y.slot(l, x).dim(), cols);
            if m.rows != m.cols {
                return Err(TwistedError::NotSemifree(format!(
                    "slot ({}, {}) has dimension {} but the free module on the generators has {}",
                    y.left().objects()[l],
                    r.objects()[x],
                    m.rows,
                    m.cols
                )));
            }
            let mut inv_cols = Vec::with_capacity(m.rows);
            for i in 0..m.rows {
                inv_cols.push(m.solve(&[(i, fld.one())]).ok_or_else(|| {
                    TwistedError::NotSemifree(format!("generators are not free at ({}, {})", y.left().objects()[l], r.objects()[x]))
                })?);
            }
            phi_inv.push(LinMap::from_columns(fld, m.cols, inv_cols));
            phi.push(m);
        }
        let mut p = Presentation { tc: shell, phi, phi_inv };
        let mut delta = HomMatrix::new();
        for (k, &(ok, gk, _)) in gens.iter().enumerate() {
            let v = y.slot(l, ok).d().apply(&[(gk, fld.one())]);
            p.express_into(&mut delta, k, ok, &v);
        }
        p.tc = TwistedComplex::from_parts_unchecked(r, tgens, delta);
        Ok(p)
    }

    /// Adds the coordinates of `v ∈ Y(l, x)` as column `k` of `m`:
    /// `v = Σ_j g_j · m_jk`.
    fn express_into(&self, m: &mut HomMatrix, k: usize, x: usize, v: &SVec) {
        let basis = self.tc.value_basis(x);
        for (pos, c) in self.phi_inv[x].apply(v) {
            let (j, e) = basis[pos];
            m.axpy_entry(j, k, &c, &[(e, self.tc.field().one())]);
        }
    }

    /// Generator order in which every `δ_jk ≠ 0` has `j` after `k`.
    fn topological_order(&self) -> Result<Vec<usize>, TwistedError> {
        let n = self.tc.len();
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (j, k, _) in self.tc.delta().iter() {
            if j == k {
                return Err(TwistedError::NotSemifree("twisting cochain has a diagonal entry".into()));
            }
            out[k].push(j);
            indeg[j] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(k) = ready.pop_first() {
            order.push(k);
            for &j in &out[k] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.insert(j);
                }
            }
        }
        if order.len() < n {
            return Err(TwistedError::NotSemifree("twisting cochain has a cycle".into()));
        }
        Ok(order)
    }
}
