//! p-adic valuations on the rationals, extended by infinity at zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::factor::is_prime;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A valuation value: an integer, or infinity (the valuation of zero).
///
/// Ordering puts `Infinity` above every finite value, so `min` behaves
/// the way case conditions such as `4 <= a <= inf` expect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    /// `k * v`; infinity stays infinity for every `k >= 1`.
    pub fn scale(self, k: i64) -> Valuation {
        debug_assert!(k >= 1);
        match self {
            Valuation::Finite(v) => Valuation::Finite(v * k),
            Valuation::Infinity => Valuation::Infinity,
        }
    }

    pub fn is(self, n: i64) -> bool {
        self == Valuation::Finite(n)
    }

    /// `lo <= self`, with `self` allowed to be infinite.
    pub fn at_least(self, lo: i64) -> bool {
        self >= Valuation::Finite(lo)
    }
}

impl From<i64> for Valuation {
    fn from(v: i64) -> Self {
        Valuation::Finite(v)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl Add<i64> for Valuation {
    type Output = Valuation;
    fn add(self, rhs: i64) -> Valuation {
        self + Valuation::Finite(rhs)
    }
}

impl Sub<i64> for Valuation {
    type Output = Valuation;
    fn sub(self, rhs: i64) -> Valuation {
        self + Valuation::Finite(-rhs)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(Valuation::Finite(v)),
            Repr::Str(s) if s == "inf" => Ok(Valuation::Infinity),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("bad valuation {s:?}"))),
        }
    }
}

/// Exponent of `p` in a nonzero integer. The caller guarantees `p >= 2`.
pub(crate) fn vp_int(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// The p-adic valuation of `x`; infinite exactly when `x = 0`.
pub fn vp(x: &Rational, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(vp_unchecked(x, p))
}

/// [`vp`] without the primality check, for hot loops over known primes.
pub(crate) fn vp_unchecked(x: &Rational, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinity;
    }
    let p = BigInt::from(p);
    Valuation::Finite(vp_int(x.numer(), &p) - vp_int(x.denom(), &p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(vp(&q(16, 3), 2).unwrap(), Valuation::Finite(4));
        assert_eq!(vp(&Rational::zero(), 7).unwrap(), Valuation::Infinity);
        assert_eq!(
            vp(&Rational::from(8 * 729), 3).unwrap(),
            Valuation::Finite(6)
        );
        assert_eq!(vp(&q(5, 27), 3).unwrap(), Valuation::Finite(-3));
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(vp(&q(1, 1), 4), Err(Error::NotPrime("4".into())));
        assert!(vp(&q(1, 1), 1).is_err());
        assert!(vp(&q(1, 1), 0).is_err());
    }

    #[test]
    fn infinity_arithmetic() {
        let inf = Valuation::Infinity;
        assert_eq!(inf + 5, inf);
        assert_eq!(
            std::cmp::min(inf, Valuation::Finite(3)),
            Valuation::Finite(3)
        );
        assert!(inf.at_least(4));
        assert!(!inf.is(4));
        assert_eq!(inf.scale(3), inf);
        assert!(Valuation::Finite(i64::MAX) < inf);
    }

    #[test]
    fn serde_form() {
        assert_eq!(
            serde_json::to_string(&Valuation::Infinity).unwrap(),
            "\"inf\""
        );
        assert_eq!(serde_json::to_string(&Valuation::Finite(-2)).unwrap(), "-2");
        let v: Valuation = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(v, Valuation::Infinity);
    }
}
