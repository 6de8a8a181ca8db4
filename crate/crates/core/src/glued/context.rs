use std::sync::Arc;

use crate::dgcat::{glue, point, Bimod, DGCategory};
use crate::exactlinalg::{Field, FiniteComplex, LinMap};
use crate::twisted::{Gen, TCBimodule, TwistedComplex};

use super::GluedError;

/// `A`, `B`, an `A`-`B` bimodule `φ` and the glued category `R = B ⊔_φ A`,
/// whose objects are those of `B` followed by those of `A`.
#[derive(Clone, Debug)]
pub struct GluedCategoryContext {
    pub a: Arc<DGCategory>,
    pub b: Arc<DGCategory>,
    pub phi: Bimod,
    pub r: Arc<DGCategory>,
}

impl GluedCategoryContext {
    pub fn new(b: &Arc<DGCategory>, a: &Arc<DGCategory>, phi: Bimod) -> Result<Self, GluedError> {
        let r = Arc::new(glue(b, a, &phi)?);
        Ok(GluedCategoryContext { a: a.clone(), b: b.clone(), phi, r })
    }

    pub fn nb(&self) -> usize {
        self.b.n_objects()
    }

    /// Index in `R` of the `A`-object `a`.
    pub fn a_obj(&self, a: usize) -> usize {
        self.nb() + a
    }

    /// `R`'s cross homs coincide with `φ` slotwise.
    pub fn cross_homs_match(&self) -> bool {
        (0..self.a.n_objects()).all(|a| {
            (0..self.nb()).all(|b| {
                let s = self.phi.slot(a, b);
                self.r.hom_degs(b, self.a_obj(a)) == s.degs() && self.r.diff(b, self.a_obj(a)) == s.d()
            })
        })
    }

    pub fn lift_a_tc(&self, x: &TwistedComplex) -> TwistedComplex {
        self.lift_tc(x, self.nb())
    }

    pub fn lift_b_tc(&self, y: &TwistedComplex) -> TwistedComplex {
        self.lift_tc(y, 0)
    }

    fn lift_tc(&self, x: &TwistedComplex, off: usize) -> TwistedComplex {
        let gens = x.gens().iter().map(|g| Gen::new(g.obj + off, g.shift)).collect();
        TwistedComplex::new(self.r.clone(), gens, x.delta().clone()).expect("lifting preserves Maurer–Cartan")
    }

    pub fn lift_a(&self, x: &TCBimodule) -> TCBimodule {
        self.lift(x, self.nb())
    }

    pub fn lift_b(&self, y: &TCBimodule) -> TCBimodule {
        self.lift(y, 0)
    }

    fn lift(&self, x: &TCBimodule, off: usize) -> TCBimodule {
        let comps = x.comps().iter().map(|c| self.lift_tc(c, off)).collect();
        TCBimodule::new(x.left().clone(), self.r.clone(), comps, |l, l2, f| x.rho(l, l2, f).clone()).expect("lifting preserves the action")
    }
}

/// `R = k_2 ⊔_V k_1` for `V = k²` in degree 0: the Kronecker quiver
/// `2 ⇉ 1`, with `B = k_2` first and `A = k_1` second.
pub fn kronecker_context(field: Field) -> GluedCategoryContext {
    let a = Arc::new(point(field).with_name("k1").with_object_names(&["1"]));
    let b = Arc::new(point(field).with_name("k2").with_object_names(&["2"]));
    let v = FiniteComplex::from_basis_unchecked(vec![0, 0], LinMap::zero(field, 2, 2));
    let phi =
        Bimod::assemble(a.clone(), b.clone(), vec![v], |_, _, _, _| LinMap::identity(field, 2), |_, _, _, _| LinMap::identity(field, 2));
    GluedCategoryContext::new(&b, &a, phi).expect("Kronecker gluing is valid")
}
