//! Exact rational scalars and prime factorizations of positive rationals.
//!
//! Every slope, coordinate and partial product in the crate is a [`Scalar`].
//! Floating point only appears where a value leaves the exact pipeline
//! (metric enclosures, rendering), via [`Scalar::to_f64`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default trial-division bound for [`factor`].
pub const DEFAULT_PRIME_BOUND: u64 = 1_000_000;

/// An exact rational number, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    /// `numer / denom`. Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        Scalar(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(n: i64) -> Self {
        Scalar(BigRational::from_integer(n.into()))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    /// `2^-k` for `k >= 0`.
    pub fn dyadic(k: u32) -> Self {
        Scalar(BigRational::new_raw(BigInt::one(), BigInt::one() << k))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// True when `0 <= self <= 1`.
    pub fn in_unit_interval(&self) -> bool {
        !self.is_negative() && self.numer() <= self.denom()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Scalar(self.0.recip()))
    }

    /// Exact integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 && self.is_zero() {
            return Err(Error::Domain(format!("0 raised to negative power {k}")));
        }
        let e = k.unsigned_abs();
        let e: u32 = e
            .try_into()
            .map_err(|_| Error::Resource(format!("exponent {k} too large")))?;
        let n = num_traits::pow::Pow::pow(self.numer(), e);
        let d = num_traits::pow::Pow::pow(self.denom(), e);
        // Powers of coprime integers stay coprime.
        let raised = if k >= 0 {
            BigRational::new_raw(n, d)
        } else {
            BigRational::new(d, n)
        };
        Ok(Scalar(raised))
    }

    /// Nearest `f64`; only for metric enclosures and rendering.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Scalar {
    fn from(value: BigRational) -> Self {
        Scalar(value)
    }
}

impl From<i64> for Scalar {
    fn from(value: i64) -> Self {
        Scalar::integer(value)
    }
}

fn mul_reduced(a: &BigRational, b: &BigRational) -> BigRational {
    // Cross-cancelling keeps the product in lowest terms without a full gcd of
    // the (possibly long) result; only gcds against the other factor are taken.
    let g1 = a.numer().gcd(b.denom());
    let g2 = a.denom().gcd(b.numer());
    let mut numer = (a.numer() / &g1) * (b.numer() / &g2);
    let mut denom = (a.denom() / &g2) * (b.denom() / &g1);
    if denom.is_negative() {
        numer = -numer;
        denom = -denom;
    }
    if numer.is_zero() {
        return BigRational::zero();
    }
    BigRational::new_raw(numer, denom)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let $a = &self.0;
                let $b = &rhs.0;
                Scalar($body)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a + b);
forward_binop!(Sub, sub, |a, b| a - b);
forward_binop!(Mul, mul, |a, b| mul_reduced(a, b));
forward_binop!(Div, div, |a, b| {
    assert!(!b.is_zero(), "division of Scalar by zero");
    mul_reduced(a, &b.recip())
});

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0.clone())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p/q` or `p`, with optional sign on `p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let numer: BigInt = n.parse().map_err(|_| bad())?;
        let denom: BigInt = d.parse().map_err(|_| bad())?;
        if d.starts_with(['+', '-']) {
            return Err(bad());
        }
        Scalar::from_bigints(numer, denom).map_err(|_| bad())
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Prime factorization of a positive rational: prime -> nonzero exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExponentVector(BTreeMap<u64, i64>);

impl ExponentVector {
    pub fn get(&self, prime: u64) -> i64 {
        self.0.get(&prime).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.0.iter().map(|(&p, &e)| (p, e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }

    /// Multiply the factorization back out.
    pub fn recompose(&self) -> Scalar {
        let mut numer = BigInt::one();
        let mut denom = BigInt::one();
        for (p, e) in self.iter() {
            let power = num_traits::pow::Pow::pow(BigInt::from(p), e.unsigned_abs());
            if e > 0 {
                numer *= power;
            } else {
                denom *= power;
            }
        }
        Scalar(BigRational::new_raw(numer, denom))
    }
}

impl FromIterator<(u64, i64)> for ExponentVector {
    fn from_iter<I: IntoIterator<Item = (u64, i64)>>(iter: I) -> Self {
        let mut map = BTreeMap::new();
        for (p, e) in iter {
            *map.entry(p).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        ExponentVector(map)
    }
}

/// Factor `q > 0` by trial division with the default prime bound.
pub fn factor(q: &Scalar) -> Result<ExponentVector> {
    factor_with_bound(q, DEFAULT_PRIME_BOUND)
}

/// Factor `q > 0` by trial division with divisors up to `prime_bound`.
///
/// A cofactor left over once the bound is hit is accepted only when it is
/// provably prime (the loop reached its square root); otherwise the input is
/// rejected with [`Error::Resource`].
pub fn factor_with_bound(q: &Scalar, prime_bound: u64) -> Result<ExponentVector> {
    if !q.is_positive() {
        return Err(Error::Domain(format!("cannot factor non-positive {q}")));
    }
    let mut exps = BTreeMap::new();
    for (part, sign) in [(q.numer(), 1i64), (q.denom(), -1i64)] {
        let n = part.to_biguint().expect("positive");
        for (p, e) in factor_integer(n, prime_bound)? {
            exps.insert(p, sign * e);
        }
    }
    Ok(ExponentVector(exps))
}

fn factor_integer(mut n: BigUint, prime_bound: u64) -> Result<Vec<(u64, i64)>> {
    let mut out = Vec::new();
    let mut d: u64 = 2;
    loop {
        if n.is_one() {
            return Ok(out);
        }
        let dd = BigUint::from(d) * d;
        if dd > n {
            // No divisor up to sqrt(n): n itself is prime.
            let p = n.to_u64().ok_or_else(|| {
                Error::Resource(format!("prime factor {n} exceeds 64 bits"))
            })?;
            out.push((p, 1));
            return Ok(out);
        }
        if d > prime_bound {
            return Err(Error::Resource(format!(
                "cofactor {n} has no prime factor <= {prime_bound}; raise the prime bound"
            )));
        }
        let mut e = 0;
        loop {
            let (quot, rem) = n.div_rem(&BigUint::from(d));
            if !rem.is_zero() {
                break;
            }
            n = quot;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
}
