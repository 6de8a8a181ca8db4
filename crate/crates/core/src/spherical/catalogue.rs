//! Worked examples: the pairs of spherical objects used by the tests, the
//! CLI scenarios and the benches.

use std::sync::Arc;

use crate::dgcat::{point, truncated_polynomial, zigzag, DGCategory};
use crate::exactlinalg::Field;
use crate::twisted::{TCBimodule, TwistedComplex};

/// A named pair `(M, N)` over a common `C`, with the sphericity degree when
/// both are `d`-spherical.
#[derive(Clone, Debug)]
pub struct Pair {
    pub name: String,
    pub m: TCBimodule,
    pub n: TCBimodule,
    pub d: Option<i64>,
}

/// `k[t]/t²` with `deg t = 2`.
pub fn kt2(field: Field) -> Arc<DGCategory> {
    Arc::new(truncated_polynomial(field, 1, 2))
}

/// `E = h^*` over `k[t]/t²`, glued with itself.
pub fn kt2_pair(field: Field) -> Pair {
    let c = kt2(field);
    let e = TCBimodule::of_tc(&TwistedComplex::representable(&c, 0, 0));
    Pair { name: "kt2".into(), m: e.clone(), n: e, d: Some(2) }
}

/// Over the zigzag category of type Ã₁: `M = h²[1]`, `N = h¹`.
pub fn zigzag_pair(field: Field) -> Pair {
    let c = Arc::new(zigzag(field));
    let m = TCBimodule::of_tc(&TwistedComplex::representable(&c, 1, 1));
    let n = TCBimodule::of_tc(&TwistedComplex::representable(&c, 0, 0));
    Pair { name: "zigzag".into(), m, n, d: Some(2) }
}

/// `M = 0` over a point, `N = E` over `k[t]/t²`.
pub fn zero_pair(field: Field) -> Pair {
    let c = kt2(field);
    let m = TCBimodule::zero(&Arc::new(point(field)), &c);
    let n = TCBimodule::of_tc(&TwistedComplex::representable(&c, 0, 0));
    Pair { name: "zero".into(), m, n, d: None }
}

/// `P = h^*` over `k[t]/t^{n+1}` with `deg t = 2`.
pub fn p_object(field: Field, n: usize) -> TwistedComplex {
    let c = Arc::new(truncated_polynomial(field, n, 2));
    TwistedComplex::representable(&c, 0, 0)
}

/// `P'` glued with itself; each cotwist is the shift `[-2n-2]`.
pub fn p_prime_pair(field: Field, n: usize) -> Pair {
    let pp = super::p_prime(&p_object(field, n), None).expect("h^* is a P-object").bimodule;
    Pair { name: format!("pprime{n}"), m: pp.clone(), n: pp, d: None }
}

/// Every pair above, the P' pairs for `n = 1, 2`.
pub fn all_pairs(field: Field) -> Vec<Pair> {
    vec![kt2_pair(field), zigzag_pair(field), zero_pair(field), p_prime_pair(field, 1), p_prime_pair(field, 2)]
}
