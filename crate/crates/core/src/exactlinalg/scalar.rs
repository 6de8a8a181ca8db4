//! Exact scalars over the rationals or a prime field.
//!
//! Rationals keep an `i64` numerator/denominator pair and fall back to
//! big integers only when a result leaves that range, so the canonical
//! representation (and therefore `Eq`/`Hash`) is unique.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Ground field of a session.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// A prime field; rejects non-primes and primes whose squares overflow `u64`.
    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(LinalgError::BadPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rat::S(n, 1)),
            Field::Prime(p) => Scalar::F(n.rem_euclid(p as i64) as u64, p),
        }
    }

    /// `num / den`; fails on a zero denominator (or one divisible by p).
    pub fn frac(self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        self.int(num).div(&self.int(den))
    }

    /// Parses `"3"`, `"-2/5"`.
    pub fn parse(self, s: &str) -> Result<Scalar, LinalgError> {
        let s = s.trim();
        let bad = || LinalgError::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                self.big(&n).div(&self.big(&d))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(self.big(&n))
            }
        }
    }

    fn big(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rat::from_big(BigRational::from_integer(n.clone()))),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::F(r.to_u64().unwrap_or(0), p)
            }
        }
    }

    pub fn label(self) -> String {
        match self {
            Field::Rational => "rational".to_string(),
            Field::Prime(p) => format!("prime:{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rational with canonical form: `S(n, d)` with `d > 0`, `gcd(n, d) = 1`
/// whenever both fit in `i64`; otherwise `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    S(i64, i64),
    B(Box<BigRational>),
}

impl Rat {
    fn from_i128(n: i128, d: i128) -> Rat {
        debug_assert!(d != 0);
        let (mut n, mut d) = (n, d);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat::S(a, b),
            _ => Rat::B(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Rat::S(a, b),
            _ => Rat::B(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::S(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Rat::B(r) => (**r).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::S(0, _))
    }

    fn add(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::S(a, b), Rat::S(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rat::from_i128(a + c, b)
                } else {
                    Rat::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::S(a, b), Rat::S(c, d)) => Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128),
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::S(a, b) => Rat::from_i128(-(*a as i128), *b as i128),
            Rat::B(r) => Rat::from_big(-(**r).clone()),
        }
    }

    fn inv(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rat::S(a, b) => Rat::from_i128(*b as i128, *a as i128),
            Rat::B(r) => Rat::from_big(r.recip()),
        })
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::S(a, 1) => write!(f, "{a}"),
            Rat::S(a, b) => write!(f, "{a}/{b}"),
            Rat::B(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// An element of the session field. Mixing fields is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rat),
    F(u64, u64),
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = (result as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    result
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::F(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::F(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => matches!(r, Rat::S(1, 1)),
            Scalar::F(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) => r.inv().map(Scalar::Q),
            Scalar::F(0, _) => None,
            Scalar::F(v, p) => Some(Scalar::F(inv_mod(*v, *p), *p)),
        }
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar, LinalgError> {
        let i = o.inv().ok_or(LinalgError::DivisionByZero)?;
        Ok(self * &i)
    }

    /// Multiplies by `(-1)^e`.
    pub fn signed(self, e: i64) -> Scalar {
        if e.rem_euclid(2) == 1 {
            -self
        } else {
            self
        }
    }

    /// Small integer view, if the value is one (rationals only use the fast path).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(Rat::S(a, 1)) => Some(*a),
            Scalar::Q(_) => None,
            Scalar::F(v, p) => {
                let v = *v as i64;
                let p = *p as i64;
                Some(if v > p / 2 { v - p } else { v })
            }
        }
    }

    fn add_ref(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::F(a, p), Scalar::F(b, q)) if p == q => Scalar::F((a + b) % p, *p),
            _ => panic!("scalar field mismatch"),
        }
    }

    fn mul_ref(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::F(a, p), Scalar::F(b, q)) if p == q => Scalar::F((*a as u128 * *b as u128 % *p as u128) as u64, *p),
            _ => panic!("scalar field mismatch"),
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::F(0, p) => Scalar::F(0, *p),
            Scalar::F(a, p) => Scalar::F(p - a, *p),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::F(v, _) => write!(f, "{v}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.add_ref(o)
    }
}
impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        self.add_ref(&o)
    }
}
impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.add_ref(&o.neg_ref())
    }
}
impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self.add_ref(&o.neg_ref())
    }
}
impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.mul_ref(o)
    }
}
impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        self.mul_ref(&o)
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(o);
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(&o.neg_ref());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_overflow_promotes_and_demotes() {
        let q = Field::Rational;
        let big = q.int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Scalar::Q(Rat::B(_))));
        let back = sq.div(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Q(Rat::S(..))));
    }

    #[test]
    fn prime_inverse() {
        let f = Field::prime(101).unwrap();
        for n in 1..101 {
            let x = f.int(n);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f.int(0).inv().is_none());
        assert!(Field::prime(100).is_err());
    }

    #[test]
    fn parse_fractions() {
        let q = Field::Rational;
        assert_eq!(q.parse("-2/4").unwrap(), q.frac(-1, 2).unwrap());
        assert_eq!(q.parse("7").unwrap(), q.int(7));
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
        let f = Field::prime(7).unwrap();
        assert_eq!(f.parse("1/2").unwrap(), f.int(4));
    }

    #[test]
    fn division_by_zero_is_error() {
        let q = Field::Rational;
        assert!(matches!(q.int(3).div(&q.int(0)), Err(LinalgError::DivisionByZero)));
    }
}
