use std::sync::Arc;

use crate::exactlinalg::{Field, FiniteComplex, GradedVectorSpace, LinMap, SVec, Scalar};

use super::category::{DGCategory, ValidationReport};
use super::DgError;

/// An explicit `A`-`B` bimodule: a complex `M(a, b)` for every pair, covariant
/// in `a` (left action of `f: a → a'`) and contravariant in `b` (right action
/// of `g: b' → b`, mapping `M(a, b) → M(a, b')`).
///
/// The diagonal bimodule of `C` has `M(a, b) = hom(b, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimod {
    left: Arc<DGCategory>,
    right: Arc<DGCategory>,
    slots: Vec<FiniteComplex>,
    lact: Vec<Vec<LinMap>>,
    ract: Vec<Vec<LinMap>>,
}

impl Bimod {
    /// Assembles a bimodule from per-basis-morphism action maps.
    ///
    /// `lact(a, a2, f, b)` is the action of basis `f ∈ hom(a, a2)` on `M(a, b)`;
    /// `ract(b2, b, g, a)` is the action of basis `g ∈ hom(b2, b)` on `M(a, b)`.
    pub fn assemble(
        left: Arc<DGCategory>,
        right: Arc<DGCategory>,
        slots: Vec<FiniteComplex>,
        mut lact: impl FnMut(usize, usize, usize, usize) -> LinMap,
        mut ract: impl FnMut(usize, usize, usize, usize) -> LinMap,
    ) -> Bimod {
        let (na, nb) = (left.n_objects(), right.n_objects());
        assert_eq!(slots.len(), na * nb, "slot count");
        let mut l = Vec::with_capacity(na * na);
        for a in 0..na {
            for a2 in 0..na {
                let mut v = Vec::with_capacity(left.hom_dim(a, a2) * nb);
                for f in 0..left.hom_dim(a, a2) {
                    for b in 0..nb {
                        let m = lact(a, a2, f, b);
                        debug_assert_eq!((m.rows, m.cols), (slots[a2 * nb + b].dim(), slots[a * nb + b].dim()));
                        v.push(m);
                    }
                }
                l.push(v);
            }
        }
        let mut r = Vec::with_capacity(nb * nb);
        for b2 in 0..nb {
            for b in 0..nb {
                let mut v = Vec::with_capacity(right.hom_dim(b2, b) * na);
                for g in 0..right.hom_dim(b2, b) {
                    for a in 0..na {
                        let m = ract(b2, b, g, a);
                        debug_assert_eq!((m.rows, m.cols), (slots[a * nb + b2].dim(), slots[a * nb + b].dim()));
                        v.push(m);
                    }
                }
                r.push(v);
            }
        }
        Bimod { left, right, slots, lact: l, ract: r }
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn left(&self) -> &Arc<DGCategory> {
        &self.left
    }

    pub fn right(&self) -> &Arc<DGCategory> {
        &self.right
    }

    pub fn slot(&self, a: usize, b: usize) -> &FiniteComplex {
        &self.slots[a * self.right.n_objects() + b]
    }

    pub fn slots(&self) -> &[FiniteComplex] {
        &self.slots
    }

    /// Action of basis `f ∈ hom(a, a2)` on `M(a, b)`.
    pub fn lact(&self, a: usize, a2: usize, f: usize, b: usize) -> &LinMap {
        let na = self.left.n_objects();
        &self.lact[a * na + a2][f * self.right.n_objects() + b]
    }

    /// Action of basis `g ∈ hom(b2, b)` on `M(a, b)`.
    pub fn ract(&self, b2: usize, b: usize, g: usize, a: usize) -> &LinMap {
        let nb = self.right.n_objects();
        &self.ract[b2 * nb + b][g * self.left.n_objects() + a]
    }

    /// Action of an arbitrary element `f ∈ hom(a, a2)`.
    pub fn lact_elem(&self, a: usize, a2: usize, f: &[(usize, Scalar)], b: usize) -> LinMap {
        let mut acc = LinMap::zero(self.field(), self.slot(a2, b).dim(), self.slot(a, b).dim());
        for (i, c) in f {
            acc = acc.axpy(c, self.lact(a, a2, *i, b));
        }
        acc
    }

    /// Action of an arbitrary element `g ∈ hom(b2, b)`.
    pub fn ract_elem(&self, b2: usize, b: usize, g: &[(usize, Scalar)], a: usize) -> LinMap {
        let mut acc = LinMap::zero(self.field(), self.slot(a, b2).dim(), self.slot(a, b).dim());
        for (i, c) in g {
            acc = acc.axpy(c, self.ract(b2, b, *i, a));
        }
        acc
    }

    pub fn total_dim(&self) -> usize {
        self.slots.iter().map(FiniteComplex::dim).sum()
    }

    /// Homology dims of every slot, keyed by object names.
    pub fn homology_table(&self) -> Vec<(String, String, GradedVectorSpace)> {
        let mut out = Vec::new();
        for a in 0..self.left.n_objects() {
            for b in 0..self.right.n_objects() {
                out.push((self.left.objects()[a].clone(), self.right.objects()[b].clone(), self.slot(a, b).homology_dims()));
            }
        }
        out
    }

    pub fn zero(left: Arc<DGCategory>, right: Arc<DGCategory>) -> Bimod {
        let f = left.field();
        let n = left.n_objects() * right.n_objects();
        Bimod::assemble(
            left,
            right,
            vec![FiniteComplex::zero(f); n],
            |_, _, _, _| LinMap::zero(f, 0, 0),
            |_, _, _, _| LinMap::zero(f, 0, 0),
        )
    }

    /// `M(a, b) = hom(b, a)` with composition actions.
    pub fn diagonal(c: &Arc<DGCategory>) -> Bimod {
        let n = c.n_objects();
        let mut slots = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                slots.push(c.hom_complex(b, a));
            }
        }
        let cl = c.clone();
        let cr = c.clone();
        Bimod::assemble(
            c.clone(),
            c.clone(),
            slots,
            move |a, a2, f, b| cl.post(b, a, a2, &cl.basis_vec(f)),
            move |b2, b, g, a| cr.pre(b2, b, a, &cr.basis_vec(g)),
        )
    }

    /// `M[n]`: degrees drop by `n`, `d ↦ (-1)^n d`, left action of `f` gets `(-1)^{n|f|}`.
    pub fn shift(&self, n: i64) -> Bimod {
        let na = self.left.n_objects();
        let lact = (0..na * na)
            .map(|k| {
                let (a, a2) = (k / na, k % na);
                self.lact[k]
                    .iter()
                    .enumerate()
                    .map(|(idx, m)| {
                        let f = idx / self.right.n_objects();
                        if (n * self.left.deg(a, a2, f)).rem_euclid(2) == 1 {
                            m.neg()
                        } else {
                            m.clone()
                        }
                    })
                    .collect()
            })
            .collect();
        Bimod {
            left: self.left.clone(),
            right: self.right.clone(),
            slots: self.slots.iter().map(|s| s.shift(n)).collect(),
            lact,
            ract: self.ract.clone(),
        }
    }

    /// The `B`-`A` bimodule `M^*(b, a) = M(a, b)^*` with negated degrees.
    ///
    /// Conventions: `(dξ)(x) = -(-1)^{|ξ|} ξ(dx)`, `(g·ξ)(x) = (-1)^{|g|} ξ(x·g)`,
    /// `(ξ·f)(x) = ξ(f·x)`.
    pub fn linear_dual(&self) -> Bimod {
        let (na, nb) = (self.left.n_objects(), self.right.n_objects());
        let mut slots = Vec::with_capacity(na * nb);
        for b in 0..nb {
            for a in 0..na {
                let s = self.slot(a, b);
                let degs: Vec<i64> = s.degs().iter().map(|d| -d).collect();
                let t = s.d().transpose();
                let cols = t
                    .columns
                    .iter()
                    .enumerate()
                    .map(|(k, col)| {
                        let sign = -s.field().one().signed(s.degs()[k]);
                        col.iter().map(|(i, x)| (*i, x * &sign)).collect()
                    })
                    .collect();
                slots.push(FiniteComplex::from_basis_unchecked(degs.clone(), LinMap::from_columns(s.field(), degs.len(), cols)));
            }
        }
        let me = self;
        Bimod::assemble(
            self.right.clone(),
            self.left.clone(),
            slots,
            |b, b2, g, a| {
                // g: b → b2 acts on M(a, b2) → M(a, b) by the right action.
                let r = me.ract(b, b2, g, a).transpose();
                if me.right.deg(b, b2, g).rem_euclid(2) == 1 {
                    r.neg()
                } else {
                    r
                }
            },
            |a2, a, f, b| me.lact(a2, a, f, b).transpose(),
        )
    }

    /// Slotwise direct sum.
    pub fn direct_sum(&self, other: &Bimod) -> Bimod {
        let slots = self.slots.iter().zip(&other.slots).map(|(x, y)| x.direct_sum(y)).collect();
        Bimod::assemble(
            self.left.clone(),
            self.right.clone(),
            slots,
            |a, a2, f, b| block_diag(self.lact(a, a2, f, b), other.lact(a, a2, f, b)),
            |b2, b, g, a| block_diag(self.ract(b2, b, g, a), other.ract(b2, b, g, a)),
        )
    }

    /// Restricts to the given left and right objects (in the given order).
    pub fn restrict(&self, left: Arc<DGCategory>, lmap: &[usize], right: Arc<DGCategory>, rmap: &[usize]) -> Bimod {
        let mut slots = Vec::new();
        for a in lmap {
            for b in rmap {
                slots.push(self.slot(*a, *b).clone());
            }
        }
        Bimod::assemble(
            left,
            right,
            slots,
            |a, a2, f, b| self.lact(lmap[a], lmap[a2], f, rmap[b]).clone(),
            |b2, b, g, a| self.ract(rmap[b2], rmap[b], g, lmap[a]).clone(),
        )
    }

    /// Exhaustive bimodule axiom check.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let (na, nb) = (self.left.n_objects(), self.right.n_objects());
        let fld = self.field();
        let la = &self.left;
        let rb = &self.right;
        for a in 0..na {
            for a2 in 0..na {
                for f in 0..la.hom_dim(a, a2) {
                    let df = la.d(a, a2, &la.basis_vec(f));
                    let p = la.deg(a, a2, f);
                    for b in 0..nb {
                        let m = self.lact(a, a2, f, b);
                        let (s, t) = (self.slot(a, b), self.slot(a2, b));
                        rep.checks += 2;
                        if !maps_degree(m, s.degs(), t.degs(), p) {
                            rep.fail(
                                "left action degree",
                                format!("{} on ({},{})", la.basis(a, a2)[f].name, la.objects()[a], rb.objects()[b]),
                            );
                        }
                        let lhs = t.d().compose(m).axpy(&-fld.one().signed(p), &m.compose(s.d()));
                        if lhs != self.lact_elem(a, a2, &df, b) {
                            rep.fail("left Leibniz", format!("{} on ({},{})", la.basis(a, a2)[f].name, la.objects()[a], rb.objects()[b]));
                        }
                    }
                }
            }
        }
        for b2 in 0..nb {
            for b in 0..nb {
                for g in 0..rb.hom_dim(b2, b) {
                    let dg = rb.d(b2, b, &rb.basis_vec(g));
                    let p = rb.deg(b2, b, g);
                    for a in 0..na {
                        let m = self.ract(b2, b, g, a);
                        let (s, t) = (self.slot(a, b), self.slot(a, b2));
                        rep.checks += 2;
                        if !maps_degree(m, s.degs(), t.degs(), p) {
                            rep.fail(
                                "right action degree",
                                format!("{} on ({},{})", rb.basis(b2, b)[g].name, la.objects()[a], rb.objects()[b]),
                            );
                        }
                        // d(x·g) = dx·g + (-1)^{|x|} x·dg
                        let lhs = t.d().compose(m);
                        let rdg = self.ract_elem(b2, b, &dg, a);
                        let rhs = m.compose(s.d()).add(&sign_by_source(&rdg, s.degs()));
                        if lhs != rhs {
                            rep.fail("right Leibniz", format!("{} on ({},{})", rb.basis(b2, b)[g].name, la.objects()[a], rb.objects()[b]));
                        }
                    }
                }
            }
        }
        // Units.
        for a in 0..na {
            for b in 0..nb {
                let id = LinMap::identity(fld, self.slot(a, b).dim());
                rep.checks += 2;
                if self.lact_elem(a, a, la.unit(a), b) != id {
                    rep.fail("left unit", format!("({},{})", la.objects()[a], rb.objects()[b]));
                }
                if self.ract_elem(b, b, rb.unit(b), a) != id {
                    rep.fail("right unit", format!("({},{})", la.objects()[a], rb.objects()[b]));
                }
            }
        }
        // Associativity of both actions and their commutation.
        for a in 0..na {
            for a2 in 0..na {
                for a3 in 0..na {
                    for f in 0..la.hom_dim(a, a2) {
                        for f2 in 0..la.hom_dim(a2, a3) {
                            let ff = la.comp_basis(a, a2, a3, f2, f);
                            for b in 0..nb {
                                rep.checks += 1;
                                if self.lact(a2, a3, f2, b).compose(self.lact(a, a2, f, b)) != self.lact_elem(a, a3, ff, b) {
                                    rep.fail("left associativity", format!("{}∘{}", la.basis(a2, a3)[f2].name, la.basis(a, a2)[f].name));
                                }
                            }
                        }
                    }
                }
            }
        }
        for b3 in 0..nb {
            for b2 in 0..nb {
                for b in 0..nb {
                    for g2 in 0..rb.hom_dim(b3, b2) {
                        for g in 0..rb.hom_dim(b2, b) {
                            let gg = rb.comp_basis(b3, b2, b, g, g2);
                            for a in 0..na {
                                rep.checks += 1;
                                if self.ract(b3, b2, g2, a).compose(self.ract(b2, b, g, a)) != self.ract_elem(b3, b, gg, a) {
                                    rep.fail("right associativity", format!("{}∘{}", rb.basis(b2, b)[g].name, rb.basis(b3, b2)[g2].name));
                                }
                            }
                        }
                    }
                }
            }
        }
        for a in 0..na {
            for a2 in 0..na {
                for f in 0..la.hom_dim(a, a2) {
                    for b2 in 0..nb {
                        for b in 0..nb {
                            for g in 0..rb.hom_dim(b2, b) {
                                rep.checks += 1;
                                let x = self.lact(a, a2, f, b2).compose(self.ract(b2, b, g, a));
                                let y = self.ract(b2, b, g, a2).compose(self.lact(a, a2, f, b));
                                if x != y {
                                    rep.fail("actions commute", format!("{} and {}", la.basis(a, a2)[f].name, rb.basis(b2, b)[g].name));
                                }
                            }
                        }
                    }
                }
            }
        }
        rep
    }
}

pub(crate) fn maps_degree(m: &LinMap, src: &[i64], tgt: &[i64], p: i64) -> bool {
    m.columns.iter().enumerate().all(|(j, c)| c.iter().all(|(i, _)| tgt[*i] == src[j] + p))
}

pub(crate) fn block_diag(x: &LinMap, y: &LinMap) -> LinMap {
    let mut cols = x.columns.clone();
    cols.extend(y.columns.iter().map(|c| c.iter().map(|(i, v)| (i + x.rows, v.clone())).collect()));
    LinMap::from_columns(x.field, x.rows + y.rows, cols)
}

/// Multiplies the columns of `m` whose source degree is odd by `-1`, i.e. `m ∘ (-1)^{|·|}`.
pub(crate) fn sign_by_source(m: &LinMap, src: &[i64]) -> LinMap {
    LinMap::from_columns(
        m.field,
        m.rows,
        m.columns
            .iter()
            .enumerate()
            .map(|(j, c)| if src[j].rem_euclid(2) == 1 { c.iter().map(|(i, x)| (*i, -x)).collect() } else { c.clone() })
            .collect(),
    )
}

/// A family of slot maps `M(a, b) → N(a, b)` of a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimodMap {
    pub deg: i64,
    pub maps: Vec<LinMap>,
}

impl BimodMap {
    pub fn zero(src: &Bimod, tgt: &Bimod, deg: i64) -> BimodMap {
        let maps = src.slots.iter().zip(&tgt.slots).map(|(s, t)| LinMap::zero(src.field(), t.dim(), s.dim())).collect();
        BimodMap { deg, maps }
    }

    pub fn identity(m: &Bimod) -> BimodMap {
        BimodMap { deg: 0, maps: m.slots.iter().map(|s| LinMap::identity(m.field(), s.dim())).collect() }
    }

    pub fn compose(&self, first: &BimodMap) -> BimodMap {
        BimodMap { deg: self.deg + first.deg, maps: self.maps.iter().zip(&first.maps).map(|(g, f)| g.compose(f)).collect() }
    }

    /// Closedness and strict compatibility with both actions.
    pub fn check(&self, src: &Bimod, tgt: &Bimod) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let fld = src.field();
        let (na, nb) = (src.left.n_objects(), src.right.n_objects());
        let p = self.deg;
        for a in 0..na {
            for b in 0..nb {
                let f = &self.maps[a * nb + b];
                let (s, t) = (src.slot(a, b), tgt.slot(a, b));
                rep.checks += 2;
                if !maps_degree(f, s.degs(), t.degs(), p) {
                    rep.fail("map degree", format!("slot ({},{})", src.left.objects()[a], src.right.objects()[b]));
                }
                let d = t.d().compose(f).axpy(&-fld.one().signed(p), &f.compose(s.d()));
                if !d.is_zero() {
                    rep.fail("closed", format!("slot ({},{})", src.left.objects()[a], src.right.objects()[b]));
                }
            }
        }
        for a in 0..na {
            for a2 in 0..na {
                for g in 0..src.left.hom_dim(a, a2) {
                    let sign = fld.one().signed(p * src.left.deg(a, a2, g));
                    for b in 0..nb {
                        rep.checks += 1;
                        let x = self.maps[a2 * nb + b].compose(src.lact(a, a2, g, b));
                        let y = tgt.lact(a, a2, g, b).compose(&self.maps[a * nb + b]).scaled(&sign);
                        if x != y {
                            rep.fail(
                                "left action",
                                format!("{} at ({},{})", src.left.basis(a, a2)[g].name, src.left.objects()[a], src.right.objects()[b]),
                            );
                        }
                    }
                }
            }
        }
        for b2 in 0..nb {
            for b in 0..nb {
                for g in 0..src.right.hom_dim(b2, b) {
                    for a in 0..na {
                        rep.checks += 1;
                        let x = self.maps[a * nb + b2].compose(src.ract(b2, b, g, a));
                        let y = tgt.ract(b2, b, g, a).compose(&self.maps[a * nb + b]);
                        if x != y {
                            rep.fail(
                                "right action",
                                format!("{} at ({},{})", src.right.basis(b2, b)[g].name, src.left.objects()[a], src.right.objects()[b]),
                            );
                        }
                    }
                }
            }
        }
        rep
    }

    /// All failures of [`BimodMap::check`] (other than degree) as one flat
    /// vector, linear in the map: zero exactly when the map is closed and
    /// commutes with both actions.
    pub fn defect(&self, src: &Bimod, tgt: &Bimod) -> SVec {
        let fld = src.field();
        let (na, nb) = (src.left.n_objects(), src.right.n_objects());
        let p = self.deg;
        let mut out = Vec::new();
        let mut off = 0;
        let mut push = |m: &LinMap, out: &mut SVec| {
            for (j, c) in m.columns.iter().enumerate() {
                for (i, x) in c {
                    out.push((off + j * m.rows + i, x.clone()));
                }
            }
            off += m.rows * m.cols;
        };
        for a in 0..na {
            for b in 0..nb {
                let f = &self.maps[a * nb + b];
                let (s, t) = (src.slot(a, b), tgt.slot(a, b));
                push(&t.d().compose(f).axpy(&-fld.one().signed(p), &f.compose(s.d())), &mut out);
            }
        }
        for a in 0..na {
            for a2 in 0..na {
                for g in 0..src.left.hom_dim(a, a2) {
                    let sign = fld.one().signed(p * src.left.deg(a, a2, g));
                    for b in 0..nb {
                        let x = self.maps[a2 * nb + b].compose(src.lact(a, a2, g, b));
                        push(&x.axpy(&-sign.clone(), &tgt.lact(a, a2, g, b).compose(&self.maps[a * nb + b])), &mut out);
                    }
                }
            }
        }
        for b2 in 0..nb {
            for b in 0..nb {
                for g in 0..src.right.hom_dim(b2, b) {
                    for a in 0..na {
                        let x = self.maps[a * nb + b2].compose(src.ract(b2, b, g, a));
                        push(&x.axpy(&-fld.one(), &tgt.ract(b2, b, g, a).compose(&self.maps[a * nb + b])), &mut out);
                    }
                }
            }
        }
        out.sort_by_key(|e| e.0);
        out
    }

    /// Slotwise quasi-isomorphism test for a degree-0 chain map.
    pub fn is_quasi_iso(&self, src: &Bimod, tgt: &Bimod) -> bool {
        self.deg == 0
            && src.slots.iter().zip(&tgt.slots).zip(&self.maps).all(|((s, t), f)| match FiniteComplex::cone(s, t, f) {
                Ok(c) => c.is_acyclic(),
                Err(_) => false,
            })
    }

    /// `cone(f) = M[1] ⊕ N` with left actions `diag((-1)^{|g|}, 1)`; `f` must be a
    /// strict degree-0 bimodule map.
    pub fn cone(&self, src: &Bimod, tgt: &Bimod) -> Result<Bimod, DgError> {
        if self.deg != 0 {
            return Err(DgError::Invalid("cone needs a degree-0 map".into()));
        }
        let chk = self.check(src, tgt);
        chk.into_result()?;
        let mut slots = Vec::with_capacity(self.maps.len());
        for ((s, t), f) in src.slots.iter().zip(&tgt.slots).zip(&self.maps) {
            slots.push(FiniteComplex::cone(s, t, f)?);
        }
        Ok(Bimod::assemble(
            src.left.clone(),
            src.right.clone(),
            slots,
            |a, a2, g, b| {
                let l = src.lact(a, a2, g, b);
                let l = if src.left.deg(a, a2, g).rem_euclid(2) == 1 { l.neg() } else { l.clone() };
                block_diag(&l, tgt.lact(a, a2, g, b))
            },
            |b2, b, g, a| block_diag(src.ract(b2, b, g, a), tgt.ract(b2, b, g, a)),
        ))
    }

    /// Combination `Σ c_k f_k` of maps with equal degree.
    pub fn combine(parts: &[(Scalar, &BimodMap)]) -> BimodMap {
        let first = parts[0].1;
        let mut maps: Vec<LinMap> = first.maps.iter().map(|m| LinMap::zero(m.field, m.rows, m.cols)).collect();
        for (c, f) in parts {
            for (acc, m) in maps.iter_mut().zip(&f.maps) {
                *acc = acc.axpy(c, m);
            }
        }
        BimodMap { deg: first.deg, maps }
    }
}
