//! Chain-level evaluation (trace) and coevaluation (coaction) maps, and the
//! twist and cotwist bimodules built from them.

use std::sync::Arc;

use crate::dgcat::{Bimod, BimodMap, DGCategory};
use crate::exactlinalg::{LinMap, SVec};

use super::bimodule::{hom_bimodule, TCBimodule, TcMap};
use super::complex::{ChainMorphism, HomSpace};
use super::matrix::HomMatrix;
use super::search::{find_quasi_iso, yoneda_map, QisoSearch};
use super::semifree::{recognize_semifree, SemifreeModel};
use super::TwistedError;

/// The evaluation `Q ⊗_A P → X`, where `Q` is a semifree model of
/// `Hom_C(P, X)`: a generator `φ_k` of `Q_l` tensored with a generator `q`
/// of `P_{o_k}` goes to `φ_k(q)`.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub model: SemifreeModel,
    pub source: TCBimodule,
    pub target: TCBimodule,
    pub map: TcMap,
}

impl Evaluation {
    pub fn cone(&self) -> Result<TCBimodule, TwistedError> {
        self.map.cone(&self.source, &self.target)
    }
}

/// `P: (A, C)`, `X: (L, C)`; returns the evaluation as a map of `(L, C)`
/// twisted bimodules.
pub fn evaluation(p: &TCBimodule, x: &TCBimodule) -> Result<Evaluation, TwistedError> {
    let homs = hom_bimodule(p, x);
    let model = recognize_semifree(&homs)?;
    let source = model.tc.tensor(p);
    let map = evaluation_map(&model.tc, &model.gens, p, x);
    debug_assert!(map.check(&source, x).passed());
    Ok(Evaluation { model, source, target: x.clone(), map })
}

/// The evaluation `Q ⊗ P → X` for any twisted `Q` whose generator `k` of
/// `Q_l` is sent to `elems[l][k] ∈ Hom_C(P_{o_k}, X_l)` (flattened).
pub fn evaluation_map(q: &TCBimodule, elems: &[Vec<SVec>], p: &TCBimodule, x: &TCBimodule) -> TcMap {
    let mut comps = Vec::with_capacity(q.comps().len());
    for (l, ql) in q.comps().iter().enumerate() {
        let mut t = HomMatrix::new();
        let mut off = 0;
        for (k, g) in ql.gens().iter().enumerate() {
            let sp = HomSpace::new(p.comp(g.obj), x.comp(l));
            for (j, r, v) in sp.unflatten(&elems[l][k]).iter() {
                t.add_to(j, off + r, v);
            }
            off += p.comp(g.obj).len();
        }
        comps.push(t);
    }
    TcMap { deg: 0, comps }
}

/// `trace: Hom_C(M, N) ⊗_A M → N` for a twisted complex `N`.
pub fn trace(m: &TCBimodule, n: &super::TwistedComplex) -> Result<ChainMorphism, TwistedError> {
    let ev = evaluation(m, &TCBimodule::of_tc(n))?;
    ChainMorphism::new(ev.source.comp(0).clone(), n.clone(), 0, ev.map.comps[0].clone())
}

/// The counit `M^∨ ⊗_A M → C` as a map of `C`-`C` twisted bimodules.
pub fn trace_bimodule(m: &TCBimodule) -> Result<Evaluation, TwistedError> {
    evaluation(m, &TCBimodule::diagonal(m.right()))
}

/// `T_M = cone(M^∨ ⊗_A M → C)`.
pub fn twist_bimodule(m: &TCBimodule) -> Result<TCBimodule, TwistedError> {
    trace_bimodule(m)?.cone()
}

/// `M^∨ = Hom_C(M, C)` as an explicit `C`-`A` bimodule.
pub fn dual_explicit(m: &TCBimodule) -> Bimod {
    hom_bimodule(m, &TCBimodule::diagonal(m.right()))
}

/// The unit `A → M ⊗_C M^∨`, `1_a ↦ Σ_i g_i ⊗ g_i^*`.
#[derive(Clone, Debug)]
pub struct Coaction {
    pub source: Bimod,
    pub target: Bimod,
    pub map: BimodMap,
}

pub fn coaction(m: &TCBimodule) -> Coaction {
    let a = m.left();
    let c = m.right();
    let fld = c.field();
    let target = m.tensor_explicit(&dual_explicit(m));
    // slot (a, a) = ⊕_i Hom(M_a, h^{o_i})[s_i]; π_i sits in block i.
    let elems: Vec<Vec<SVec>> = (0..a.n_objects())
        .map(|x| {
            let ma = m.comp(x);
            let mut v = Vec::new();
            let mut off = 0;
            for (i, g) in ma.gens().iter().enumerate() {
                let h = super::TwistedComplex::representable(c, g.obj, 0);
                let sp = HomSpace::new(ma, &h);
                let pi = HomMatrix::from_entries([((0, i), c.unit(g.obj).clone())]);
                v.extend(sp.flatten(&pi).into_iter().map(|(k, s)| (off + k, s)));
                off += sp.dim();
            }
            vec![crate::exactlinalg::sparse::collect(fld, v)]
        })
        .collect();
    let diag = TCBimodule::diagonal(a);
    let map = yoneda_map(&diag, &target, 0, &elems).expect("units have degree 0");
    Coaction { source: Bimod::diagonal(a), target, map }
}

/// `C_M = cone(A → M ⊗_C M^∨)[-1]`.
pub fn cotwist_bimodule(m: &TCBimodule) -> Bimod {
    let co = coaction(m);
    co.map.cone(&co.source, &co.target).expect("the coaction is a closed bimodule map").shift(-1)
}

/// `σ: (M ⊗_C M^∨)[-1] → C_M`, the inclusion of the second cone component.
#[derive(Clone, Debug)]
pub struct Sigma {
    pub source: Bimod,
    pub target: Bimod,
    pub map: BimodMap,
}

impl Sigma {
    pub fn new(m: &TCBimodule) -> Self {
        let co = coaction(m);
        let target = co.map.cone(&co.source, &co.target).expect("closed coaction").shift(-1);
        let source = co.target.shift(-1);
        let fld = m.right().field();
        let maps = source
            .slots()
            .iter()
            .zip(co.source.slots())
            .zip(target.slots())
            .map(|((s, a), t)| LinMap::from_columns(fld, t.dim(), (0..s.dim()).map(|k| vec![(a.dim() + k, fld.one())]).collect()))
            .collect();
        Sigma { source, target, map: BimodMap { deg: 0, maps } }
    }

    /// Certifies `cone(σ) ≃ A` by a Yoneda search from the diagonal.
    pub fn triangle(&self, left: &Arc<DGCategory>, seed: u64) -> Result<QisoSearch<BimodMap>, TwistedError> {
        let c = self.map.cone(&self.source, &self.target)?;
        Ok(find_quasi_iso(&TCBimodule::diagonal(left), &c, &[], seed))
    }
}

/// The two halves of the zig-zag `M → M ⊗ M^∨ ⊗ M → M`: the coaction
/// tensored with `M`, then `M` tensored with the trace. Their composite is
/// the identity on generators.
#[derive(Clone, Debug)]
pub struct ZigZag {
    pub middle: TCBimodule,
    pub coact: TcMap,
    pub eval: TcMap,
}

impl ZigZag {
    pub fn new(m: &TCBimodule) -> Result<Self, TwistedError> {
        let ev = trace_bimodule(m)?;
        let q = &ev.model.tc;
        let middle = m.tensor(&ev.source);
        let c = m.right();
        let eval = ev.map.tensor_left(m, &ev.source, &ev.target);
        let mut comps = Vec::with_capacity(m.comps().len());
        for (a, ma) in m.comps().iter().enumerate() {
            // offsets of (Q ⊗ M)_{o_j} blocks and of M_{o_k} blocks inside them
            let mut out = HomMatrix::new();
            let mut off_j = 0;
            for (j, gj) in ma.gens().iter().enumerate() {
                let qm = ev.source.comp(gj.obj);
                let qc = q.comp(gj.obj);
                let mut off_k = Vec::with_capacity(qc.len());
                let mut acc = 0;
                for g in qc.gens() {
                    off_k.push(acc);
                    acc += m.comp(g.obj).len();
                }
                let h = super::TwistedComplex::representable(c, gj.obj, 0);
                let sp = HomSpace::new(ma, &h);
                let pi = sp.flatten(&HomMatrix::from_entries([((0, j), c.unit(gj.obj).clone())]));
                let basis = qc.value_basis(a);
                for (pos, coeff) in ev.model.coords(gj.obj, a, &pi) {
                    let (k, e) = basis[pos];
                    let ok = qc.gens()[k].obj;
                    let r = m.rho(a, ok, e);
                    for (qq, i, v) in r.iter() {
                        out.axpy_entry(off_j + off_k[k] + qq, i, &coeff, v);
                    }
                }
                off_j += qm.len();
            }
            comps.push(out);
        }
        Ok(ZigZag { middle, coact: TcMap { deg: 0, comps }, eval })
    }

    pub fn composite(&self, m: &TCBimodule) -> TcMap {
        self.eval.compose(&self.coact, m, &self.middle, m)
    }
}
