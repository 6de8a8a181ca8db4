use std::sync::Arc;

use crate::dgcat::{opposite, point, Bimod, BimodMap, DGCategory, ValidationReport};
use crate::exactlinalg::{FiniteComplex, LinMap, SVec, Scalar};

use super::complex::{cone_matrix, hom_complex, HomSpace, TwistedComplex};
use super::matrix::{Gen, HomMatrix};
use super::TwistedError;

/// An `A`-`C` bimodule that is a twisted complex `X_a` over `C` for every
/// object `a` of `A`, with `A` acting strictly through closed morphism
/// matrices `ρ(f): X_a → X_{a2}` of degree `|f|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TCBimodule {
    left: Arc<DGCategory>,
    right: Arc<DGCategory>,
    comps: Vec<TwistedComplex>,
    /// `action[a * n + a2][f]`.
    action: Vec<Vec<HomMatrix>>,
}

impl TCBimodule {
    pub fn new(
        left: Arc<DGCategory>,
        right: Arc<DGCategory>,
        comps: Vec<TwistedComplex>,
        action: impl FnMut(usize, usize, usize) -> HomMatrix,
    ) -> Result<Self, TwistedError> {
        let m = Self::assemble(left, right, comps, action);
        m.validate().into_result()?;
        Ok(m)
    }

    pub(crate) fn assemble(
        left: Arc<DGCategory>,
        right: Arc<DGCategory>,
        comps: Vec<TwistedComplex>,
        mut action: impl FnMut(usize, usize, usize) -> HomMatrix,
    ) -> Self {
        let n = left.n_objects();
        assert_eq!(comps.len(), n, "one twisted complex per left object");
        let mut act = Vec::with_capacity(n * n);
        for a in 0..n {
            for a2 in 0..n {
                act.push((0..left.hom_dim(a, a2)).map(|f| action(a, a2, f)).collect());
            }
        }
        TCBimodule { left, right, comps, action: act }
    }

    /// A twisted complex as a bimodule over the point on the left.
    pub fn of_tc(x: &TwistedComplex) -> Self {
        let k = Arc::new(point(x.field()));
        let id = HomMatrix::identity(x.cat(), &x.objs());
        Self::assemble(k, x.cat().clone(), vec![x.clone()], |_, _, _| id.clone())
    }

    /// The diagonal bimodule `a ↦ h^a`, `ρ(f) = [f]`.
    pub fn diagonal(c: &Arc<DGCategory>) -> Self {
        let comps = (0..c.n_objects()).map(|o| TwistedComplex::representable(c, o, 0)).collect();
        Self::assemble(c.clone(), c.clone(), comps, |_, _, f| HomMatrix::from_entries([((0, 0), c.basis_vec(f))]))
    }

    pub fn zero(left: &Arc<DGCategory>, right: &Arc<DGCategory>) -> Self {
        let comps = (0..left.n_objects()).map(|_| TwistedComplex::zero(right)).collect();
        Self::assemble(left.clone(), right.clone(), comps, |_, _, _| HomMatrix::new())
    }

    pub fn left(&self) -> &Arc<DGCategory> {
        &self.left
    }

    pub fn right(&self) -> &Arc<DGCategory> {
        &self.right
    }

    pub fn comp(&self, a: usize) -> &TwistedComplex {
        &self.comps[a]
    }

    pub fn comps(&self) -> &[TwistedComplex] {
        &self.comps
    }

    pub fn rho(&self, a: usize, a2: usize, f: usize) -> &HomMatrix {
        &self.action[a * self.left.n_objects() + a2][f]
    }

    pub fn rho_elem(&self, a: usize, a2: usize, f: &[(usize, Scalar)]) -> HomMatrix {
        let mut acc = HomMatrix::new();
        for (i, c) in f {
            acc = acc.axpy(c, self.rho(a, a2, *i));
        }
        acc
    }

    pub fn n_gens(&self) -> usize {
        self.comps.iter().map(TwistedComplex::len).sum()
    }

    /// Same data over structurally equal categories.
    pub fn rebased(&self, left: &Arc<DGCategory>, right: &Arc<DGCategory>) -> Result<Self, TwistedError> {
        if !left.same_structure(&self.left) || !right.same_structure(&self.right) {
            return Err(TwistedError::Mismatch("rebase onto a different category".into()));
        }
        Ok(TCBimodule {
            left: left.clone(),
            right: right.clone(),
            comps: self.comps.iter().map(|x| x.rebased(right)).collect(),
            action: self.action.clone(),
        })
    }

    /// Maurer–Cartan per component; closedness, multiplicativity and
    /// unitality of the action.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let la = &self.left;
        for (a, x) in self.comps.iter().enumerate() {
            if !Arc::ptr_eq(x.cat(), &self.right) && !x.cat().same_structure(&self.right) {
                rep.fail("component category", format!("component {a}"));
            }
            rep.merge(x.validate());
        }
        if !rep.passed() {
            return rep;
        }
        let n = la.n_objects();
        for a in 0..n {
            for a2 in 0..n {
                let (x, y) = (&self.comps[a], &self.comps[a2]);
                for f in 0..la.hom_dim(a, a2) {
                    let p = la.deg(a, a2, f);
                    let r = self.rho(a, a2, f);
                    let name = &la.basis(a, a2)[f].name;
                    rep.checks += 2;
                    if r.has_degrees(&self.right, &x.objs(), &y.objs(), |j, i| TwistedComplex::entry_degree(x, y, p, j, i)).is_err() {
                        rep.fail("action degree", name.clone());
                        continue;
                    }
                    let d = TwistedComplex::map_differential(x, y, r, p);
                    if d != self.rho_elem(a, a2, &la.d(a, a2, &la.basis_vec(f))) {
                        rep.fail("action closed", format!("d ρ({name}) ≠ ρ(d {name})"));
                    }
                }
            }
            rep.checks += 1;
            if self.rho_elem(a, a, la.unit(a)) != HomMatrix::identity(&self.right, &self.comps[a].objs()) {
                rep.fail("action unit", la.objects()[a].clone());
            }
        }
        for a in 0..n {
            for a2 in 0..n {
                for a3 in 0..n {
                    for f in 0..la.hom_dim(a, a2) {
                        for g in 0..la.hom_dim(a2, a3) {
                            rep.checks += 1;
                            let lhs = self.rho(a2, a3, g).compose(
                                self.rho(a, a2, f),
                                &self.right,
                                &self.comps[a].objs(),
                                &self.comps[a2].objs(),
                                &self.comps[a3].objs(),
                            );
                            if lhs != self.rho_elem(a, a3, la.comp_basis(a, a2, a3, g, f)) {
                                rep.fail("action composition", format!("ρ({})ρ({})", la.basis(a2, a3)[g].name, la.basis(a, a2)[f].name));
                            }
                        }
                    }
                }
            }
        }
        rep
    }

    /// `M[n]`: every component shifted, `ρ(f) ↦ (-1)^{n|f|} ρ(f)`.
    pub fn shift(&self, n: i64) -> Self {
        let la = self.left.clone();
        let m = la.n_objects();
        TCBimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            comps: self.comps.iter().map(|x| x.shift(n)).collect(),
            action: self
                .action
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    v.iter()
                        .enumerate()
                        .map(|(f, r)| if (n * la.deg(k / m, k % m, f)).rem_euclid(2) == 1 { r.neg() } else { r.clone() })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.left.n_objects();
        TCBimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(x, y)| x.direct_sum(y)).collect(),
            action: (0..n * n)
                .map(|k| {
                    let (a, a2) = (k / n, k % n);
                    let (r0, c0) = (self.comps[a2].len(), self.comps[a].len());
                    self.action[k].iter().zip(&other.action[k]).map(|(x, y)| x.add(&y.offset(r0, c0))).collect()
                })
                .collect(),
        }
    }

    /// Expansion into an explicit bimodule: slot `(a, c) = X_a(c)`.
    pub fn expand(&self) -> Bimod {
        let (na, nc) = (self.left.n_objects(), self.right.n_objects());
        let mut slots = Vec::with_capacity(na * nc);
        for a in 0..na {
            for c in 0..nc {
                slots.push(self.comps[a].value(c));
            }
        }
        let cat = self.right.clone();
        Bimod::assemble(
            self.left.clone(),
            self.right.clone(),
            slots,
            |a, a2, f, c| TwistedComplex::value_map(&self.comps[a], &self.comps[a2], self.rho(a, a2, f), c),
            |c2, c, g, a| {
                // e ↦ e ∘ g on every generator block.
                let x = &self.comps[a];
                let blocks: Vec<LinMap> = x.gens().iter().map(|gn| cat.pre(c2, c, gn.obj, &cat.basis_vec(g))).collect();
                block_diag_all(&blocks, cat.field())
            },
        )
    }

    /// `M ⊗_C Y` for an explicit `C`-`D` bimodule `Y`: slot `(a, d)` is
    /// `⊕_i Y(o_i, d)[s_i]` with `D = (-1)^{s_i} D_Y + δ·`.
    pub fn tensor_explicit(&self, y: &Bimod) -> Bimod {
        let (na, nd) = (self.left.n_objects(), y.right().n_objects());
        let fld = y.field();
        let mut slots = Vec::with_capacity(na * nd);
        let mut offs: Vec<Vec<Vec<usize>>> = Vec::with_capacity(na);
        for a in 0..na {
            let x = &self.comps[a];
            let mut per_d = Vec::with_capacity(nd);
            for d in 0..nd {
                let mut off = vec![0];
                let mut degs = Vec::new();
                for g in x.gens() {
                    let s = y.slot(g.obj, d);
                    degs.extend(s.degs().iter().map(|e| e - g.shift));
                    off.push(degs.len());
                }
                let mut blocks: Vec<(usize, usize, LinMap)> = Vec::new();
                for (i, g) in x.gens().iter().enumerate() {
                    let s = y.slot(g.obj, d);
                    let dd = if g.shift.rem_euclid(2) == 1 { s.d().neg() } else { s.d().clone() };
                    blocks.push((i, i, dd));
                }
                for (j, i, v) in x.delta().iter() {
                    blocks.push((j, i, y.lact_elem(x.gens()[i].obj, x.gens()[j].obj, v, d)));
                }
                let dmap = assemble_blocks(fld, &off, &off, blocks);
                slots.push(FiniteComplex::from_basis_unchecked(degs, dmap));
                per_d.push(off);
            }
            offs.push(per_d);
        }
        Bimod::assemble(
            self.left.clone(),
            y.right().clone(),
            slots,
            |a, a2, f, d| {
                let (x, x2) = (&self.comps[a], &self.comps[a2]);
                let blocks =
                    self.rho(a, a2, f).iter().map(|(j, i, v)| (j, i, y.lact_elem(x.gens()[i].obj, x2.gens()[j].obj, v, d))).collect();
                assemble_blocks(fld, &offs[a2][d], &offs[a][d], blocks)
            },
            |d2, d, g, a| {
                let x = &self.comps[a];
                let blocks = x.gens().iter().enumerate().map(|(i, gn)| (i, i, y.ract(d2, d, g, gn.obj).clone())).collect();
                assemble_blocks(fld, &offs[a][d2], &offs[a][d], blocks)
            },
        )
    }

    /// `M ⊗_C X` for a twisted `C`-`D` bimodule `X`: each generator `(c, s)`
    /// of `M_a` is replaced by `X_c[s]`, and `δ^M` acts through `ρ_X`.
    pub fn tensor(&self, x: &TCBimodule) -> TCBimodule {
        let na = self.left.n_objects();
        let fld = self.right.field();
        let mut comps = Vec::with_capacity(na);
        let mut offs = Vec::with_capacity(na);
        for a in 0..na {
            let m = &self.comps[a];
            let mut gens = Vec::new();
            let mut off = Vec::with_capacity(m.len());
            let mut delta = HomMatrix::new();
            for g in m.gens() {
                off.push(gens.len());
                let xc = &x.comps[g.obj];
                delta = delta.add(&xc.delta().signed_by(fld, |_, _| g.shift).offset(gens.len(), gens.len()));
                gens.extend(xc.gens().iter().map(|q| Gen::new(q.obj, q.shift + g.shift)));
            }
            for (j, i, v) in m.delta().iter() {
                let r = x.rho_elem(m.gens()[i].obj, m.gens()[j].obj, v);
                delta = delta.add(&r.offset(off[j], off[i]));
            }
            comps.push(TwistedComplex::from_parts(x.right.clone(), gens, delta));
            offs.push(off);
        }
        TCBimodule::assemble(self.left.clone(), x.right.clone(), comps, |a, a2, f| {
            let (m, m2) = (&self.comps[a], &self.comps[a2]);
            let mut out = HomMatrix::new();
            for (j, i, v) in self.rho(a, a2, f).iter() {
                let r = x.rho_elem(m.gens()[i].obj, m2.gens()[j].obj, v);
                out = out.add(&r.offset(offs[a2][j], offs[a][i]));
            }
            out
        })
    }

    /// The dual `Hom_C(M, C)` as a twisted `A^op`-`C^op` bimodule: generators
    /// reversed with negated shifts, `δ'_ij = -(-1)^{s_j(1+s_i)} δ_ji`.
    pub fn dual(&self) -> TCBimodule {
        let lop = Arc::new(opposite(&self.left));
        let rop = Arc::new(opposite(&self.right));
        let fld = self.right.field();
        let comps: Vec<TwistedComplex> = self
            .comps
            .iter()
            .map(|x| {
                let n = x.len();
                let s = x.shifts();
                let gens = x.gens().iter().rev().map(|g| Gen::new(g.obj, -g.shift)).collect();
                let mut delta = HomMatrix::new();
                for (j, i, v) in x.delta().iter() {
                    let sign = -fld.one().signed(s[j] * (1 + s[i]));
                    delta.axpy_entry(n - 1 - i, n - 1 - j, &sign, v);
                }
                TwistedComplex::from_parts(rop.clone(), gens, delta)
            })
            .collect();
        // f ∈ hom_{A^op}(x, y) = hom_A(y, x); ρ(f): M_y → M_x.
        TCBimodule::assemble(lop, rop, comps, |x, y, f| {
            let p = self.left.deg(y, x, f);
            let (my, mx) = (&self.comps[y], &self.comps[x]);
            let (sy, sx) = (my.shifts(), mx.shifts());
            let (ny, nx) = (my.len(), mx.len());
            let mut out = HomMatrix::new();
            for (j, i, v) in self.rho(y, x, f).iter() {
                let (si, sj) = (sy[i], sx[j]);
                let sign = fld.one().signed(p * (si + sj) + si * sj + si);
                out.axpy_entry(ny - 1 - i, nx - 1 - j, &sign, v);
            }
            out
        })
    }
}

/// `Hom_C(N_b, M_a)` as an explicit `A`-`B` bimodule: left action by
/// post-composition with `ρ_M`, right action by pre-composition with `ρ_N`.
pub fn hom_bimodule(n: &TCBimodule, m: &TCBimodule) -> Bimod {
    let (na, nb) = (m.left.n_objects(), n.left.n_objects());
    let cat = m.right.clone();
    let fld = cat.field();
    let mut slots = Vec::with_capacity(na * nb);
    let mut spaces = Vec::with_capacity(na * nb);
    for a in 0..na {
        for b in 0..nb {
            slots.push(hom_complex(&n.comps[b], &m.comps[a]));
            spaces.push(HomSpace::new(&n.comps[b], &m.comps[a]));
        }
    }
    Bimod::assemble(
        m.left.clone(),
        n.left.clone(),
        slots,
        |a, a2, f, b| {
            let (src, tgt) = (&spaces[a * nb + b], &spaces[a2 * nb + b]);
            let r = m.rho(a, a2, f);
            let cols = (0..src.dim())
                .map(|k| {
                    let x = src.unflatten(&[(k, fld.one())]);
                    tgt.flatten(&r.compose(&x, &cat, src.src_objs(), src.tgt_objs(), tgt.tgt_objs()))
                })
                .collect();
            LinMap::from_columns(fld, tgt.dim(), cols)
        },
        |b2, b, g, a| {
            let (src, tgt) = (&spaces[a * nb + b], &spaces[a * nb + b2]);
            let r = n.rho(b2, b, g);
            let cols = (0..src.dim())
                .map(|k| {
                    let x = src.unflatten(&[(k, fld.one())]);
                    tgt.flatten(&x.compose(r, &cat, tgt.src_objs(), src.src_objs(), src.tgt_objs()))
                })
                .collect();
            LinMap::from_columns(fld, tgt.dim(), cols)
        },
    )
}

/// A morphism of twisted bimodules: one morphism matrix `X_a → Y_a` per `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcMap {
    pub deg: i64,
    pub comps: Vec<HomMatrix>,
}

impl TcMap {
    pub fn zero(src: &TCBimodule, deg: i64) -> TcMap {
        TcMap { deg, comps: vec![HomMatrix::new(); src.comps.len()] }
    }

    pub fn identity(x: &TCBimodule) -> TcMap {
        TcMap { deg: 0, comps: x.comps.iter().map(|c| HomMatrix::identity(&x.right, &c.objs())).collect() }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &TcMap, x: &TCBimodule, y: &TCBimodule, z: &TCBimodule) -> TcMap {
        TcMap {
            deg: self.deg + first.deg,
            comps: (0..x.comps.len())
                .map(|a| self.comps[a].compose(&first.comps[a], &x.right, &x.comps[a].objs(), &y.comps[a].objs(), &z.comps[a].objs()))
                .collect(),
        }
    }

    pub fn axpy(&self, c: &Scalar, other: &TcMap) -> TcMap {
        TcMap { deg: self.deg, comps: self.comps.iter().zip(&other.comps).map(|(x, y)| x.axpy(c, y)).collect() }
    }

    /// Degrees, closedness and `F ρ_X(f) = (-1)^{p|f|} ρ_Y(f) F`.
    pub fn check(&self, src: &TCBimodule, tgt: &TCBimodule) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let p = self.deg;
        let la = &src.left;
        let fld = src.right.field();
        for (a, f) in self.comps.iter().enumerate() {
            let (x, y) = (&src.comps[a], &tgt.comps[a]);
            rep.checks += 2;
            if f.has_degrees(&src.right, &x.objs(), &y.objs(), |j, i| TwistedComplex::entry_degree(x, y, p, j, i)).is_err() {
                rep.fail("map degree", la.objects()[a].clone());
                continue;
            }
            if !TwistedComplex::map_differential(x, y, f, p).is_zero() {
                rep.fail("map closed", la.objects()[a].clone());
            }
        }
        for a in 0..la.n_objects() {
            for a2 in 0..la.n_objects() {
                for g in 0..la.hom_dim(a, a2) {
                    rep.checks += 1;
                    let sign = fld.one().signed(p * la.deg(a, a2, g));
                    let (xa, xa2, ya, ya2) = (&src.comps[a], &src.comps[a2], &tgt.comps[a], &tgt.comps[a2]);
                    let lhs = self.comps[a2].compose(src.rho(a, a2, g), &src.right, &xa.objs(), &xa2.objs(), &ya2.objs());
                    let rhs = tgt.rho(a, a2, g).compose(&self.comps[a], &src.right, &xa.objs(), &ya.objs(), &ya2.objs());
                    if lhs != rhs.scaled(&sign) {
                        rep.fail("map commutes with action", la.basis(a, a2)[g].name.clone());
                    }
                }
            }
        }
        rep
    }

    /// The induced map of expansions.
    pub fn expand(&self, src: &TCBimodule, tgt: &TCBimodule) -> BimodMap {
        let nc = src.right.n_objects();
        let mut maps = Vec::with_capacity(src.comps.len() * nc);
        for (a, f) in self.comps.iter().enumerate() {
            for c in 0..nc {
                maps.push(TwistedComplex::value_map(&src.comps[a], &tgt.comps[a], f, c));
            }
        }
        BimodMap { deg: self.deg, maps }
    }

    /// `cone(F)` with left action `diag((-1)^{|f|} ρ_X(f), ρ_Y(f))`.
    pub fn cone(&self, src: &TCBimodule, tgt: &TCBimodule) -> Result<TCBimodule, TwistedError> {
        if self.deg != 0 {
            return Err(TwistedError::NotClosed("cone needs a degree-0 map".into()));
        }
        self.check(src, tgt).into_result()?;
        let comps = src.comps.iter().zip(&tgt.comps).zip(&self.comps).map(|((x, y), f)| cone_matrix(x, y, f)).collect();
        let la = src.left.clone();
        Ok(TCBimodule::assemble(src.left.clone(), src.right.clone(), comps, |a, a2, g| {
            let sx = src.rho(a, a2, g);
            let sx = if la.deg(a, a2, g).rem_euclid(2) == 1 { sx.neg() } else { sx.clone() };
            sx.add(&tgt.rho(a, a2, g).offset(src.comps[a2].len(), src.comps[a].len()))
        }))
    }

    /// `F ⊗ id_V: X ⊗ V → Y ⊗ V`.
    pub fn tensor_right(&self, src: &TCBimodule, tgt: &TCBimodule, v: &TCBimodule) -> TcMap {
        let offs = |m: &TCBimodule, a: usize| -> Vec<usize> {
            let mut off = Vec::new();
            let mut acc = 0;
            for g in m.comps[a].gens() {
                off.push(acc);
                acc += v.comps[g.obj].len();
            }
            off
        };
        TcMap {
            deg: self.deg,
            comps: self
                .comps
                .iter()
                .enumerate()
                .map(|(a, f)| {
                    let (ox, oy) = (offs(src, a), offs(tgt, a));
                    let (x, y) = (&src.comps[a], &tgt.comps[a]);
                    let mut out = HomMatrix::new();
                    for (j, i, e) in f.iter() {
                        out = out.add(&v.rho_elem(x.gens()[i].obj, y.gens()[j].obj, e).offset(oy[j], ox[i]));
                    }
                    out
                })
                .collect(),
        }
    }

    /// `id_U ⊗ G: U ⊗ V → U ⊗ W` for `G: V → W` of degree 0.
    pub fn tensor_left(&self, u: &TCBimodule, src: &TCBimodule, tgt: &TCBimodule) -> TcMap {
        assert_eq!(self.deg, 0, "id ⊗ G is only formed for degree-0 G");
        TcMap {
            deg: 0,
            comps: u
                .comps
                .iter()
                .map(|x| {
                    let (mut os, mut ot) = (0, 0);
                    let mut out = HomMatrix::new();
                    for g in x.gens() {
                        out = out.add(&self.comps[g.obj].offset(ot, os));
                        os += src.comps[g.obj].len();
                        ot += tgt.comps[g.obj].len();
                    }
                    out
                })
                .collect(),
        }
    }
}

pub(crate) fn block_diag_all(blocks: &[LinMap], fld: crate::exactlinalg::Field) -> LinMap {
    let mut rows = 0;
    let mut cols = Vec::new();
    for b in blocks {
        cols.extend(b.columns.iter().map(|c| c.iter().map(|(i, x)| (i + rows, x.clone())).collect::<SVec>()));
        rows += b.rows;
    }
    LinMap::from_columns(fld, rows, cols)
}

/// Places blocks `(row block, column block, map)` at the given offsets.
pub(crate) fn assemble_blocks(
    fld: crate::exactlinalg::Field,
    row_off: &[usize],
    col_off: &[usize],
    blocks: Vec<(usize, usize, LinMap)>,
) -> LinMap {
    let rows = *row_off.last().unwrap_or(&0);
    let ncols = *col_off.last().unwrap_or(&0);
    let mut entries = Vec::new();
    for (j, i, m) in blocks {
        for (c, col) in m.columns.iter().enumerate() {
            for (r, x) in col {
                entries.push((row_off[j] + r, col_off[i] + c, x.clone()));
            }
        }
    }
    LinMap::from_triplets(fld, rows, ncols, entries)
}
