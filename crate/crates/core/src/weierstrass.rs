//! Long Weierstrass models over the rationals, their invariants, and the
//! group of coordinate changes `[u, r, s, t]`.
//!
//! A transformation acts by `x = u^2 x' + r`, `y = u^3 y' + u^2 s x' + t`;
//! applying it to a model `E` yields the model `E'` in the primed
//! coordinates. Under this convention `u^4 c4(E') = c4(E)`,
//! `u^6 c6(E') = c6(E)`, `u^12 disc(E') = disc(E)` and the invariant
//! differential scales as `omega(E') = u * omega(E)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::valuation::vp_unchecked;
use crate::arith::{is_prime, Rational, Valuation};
use crate::error::{Error, Result};

/// Field operations needed to push coefficients through a coordinate change.
pub trait Scalar:
    Clone
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + From<i64>
{
}

impl Scalar for Rational {}

/// Coefficients `[a1, a2, a3, a4, a6]` of the model obtained from `a` by
/// the change of variables `[u, r, s, t]`.
pub fn transform_coefficients<F: Scalar>(a: &[F; 5], u: &F, r: &F, s: &F, t: &F) -> [F; 5] {
    let [a1, a2, a3, a4, a6] = a.clone();
    let two = F::from(2);
    let three = F::from(3);
    let u2 = u.clone() * u.clone();
    let u3 = u2.clone() * u.clone();
    let u4 = u2.clone() * u2.clone();
    let u6 = u3.clone() * u3.clone();
    let (r, s, t) = (r.clone(), s.clone(), t.clone());

    let na1 = (a1.clone() + two.clone() * s.clone()) / u.clone();
    let na2 = (a2.clone() - s.clone() * a1.clone() + three.clone() * r.clone()
        - s.clone() * s.clone())
        / u2;
    let na3 = (a3.clone() + r.clone() * a1.clone() + two.clone() * t.clone()) / u3;
    let na4 = (a4.clone() - s.clone() * a3.clone() + two.clone() * r.clone() * a2.clone()
        - (t.clone() + r.clone() * s.clone()) * a1.clone()
        + three * r.clone() * r.clone()
        - two * s * t.clone())
        / u4;
    let na6 =
        (a6 + r.clone() * a4 + r.clone() * r.clone() * a2 + r.clone() * r.clone() * r.clone()
            - t.clone() * a3
            - t.clone() * t.clone()
            - r * t * a1)
            / u6;
    [na1, na2, na3, na4, na6]
}

/// The standard quantities attached to a Weierstrass equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub b2: Rational,
    pub b4: Rational,
    pub b6: Rational,
    pub b8: Rational,
    pub c4: Rational,
    pub c6: Rational,
    pub delta: Rational,
    /// Absent when the discriminant vanishes.
    pub j: Option<Rational>,
}

impl Invariants {
    /// Total: a zero discriminant is reported, not rejected.
    pub fn from_coefficients(a: &[Rational; 5]) -> Invariants {
        let [a1, a2, a3, a4, a6] = a;
        let b2 = a1 * a1 + Rational::from(4) * a2;
        let b4 = Rational::from(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + Rational::from(4) * a6;
        let b8 = (&b2 * &b6 - &b4 * &b4) / Rational::from(4);
        let c4 = &b2 * &b2 - Rational::from(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + Rational::from(36) * &b2 * &b4 - Rational::from(216) * &b6;
        let c4_cubed = &c4 * &c4 * &c4;
        let delta = (&c4_cubed - &c6 * &c6) / Rational::from(1728);
        let j = (!delta.is_zero()).then(|| &c4_cubed / &delta);
        Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            delta,
            j,
        }
    }
}

/// A nonsingular Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Model {
    a: [Rational; 5],
}

impl Model {
    /// Rejects singular equations.
    pub fn new(a: [Rational; 5]) -> Result<Model> {
        if Invariants::from_coefficients(&a).delta.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Model { a })
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Model> {
        Model::new(a.map(Rational::from))
    }

    /// `y^2 = x^3 + A x + B`.
    pub fn short(a: Rational, b: Rational) -> Result<Model> {
        Model::new([Rational::zero(), Rational::zero(), Rational::zero(), a, b])
    }

    pub fn coefficients(&self) -> &[Rational; 5] {
        &self.a
    }

    pub fn a1(&self) -> &Rational {
        &self.a[0]
    }
    pub fn a2(&self) -> &Rational {
        &self.a[1]
    }
    pub fn a3(&self) -> &Rational {
        &self.a[2]
    }
    pub fn a4(&self) -> &Rational {
        &self.a[3]
    }
    pub fn a6(&self) -> &Rational {
        &self.a[4]
    }

    pub fn invariants(&self) -> Invariants {
        Invariants::from_coefficients(&self.a)
    }

    pub fn discriminant(&self) -> Rational {
        self.invariants().delta
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().all(Rational::is_integer)
    }

    /// Triple of p-adic valuations of `(c4, c6, disc)`.
    pub fn padic_signature(&self, p: u64) -> Result<PAdicSignature> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(PAdicSignature::of(&self.invariants(), p))
    }

    /// The model in the primed coordinates of `t`.
    pub fn apply(&self, t: &Transformation) -> Model {
        let a = transform_coefficients(&self.a, &t.u, &t.r, &t.s, &t.t);
        // u != 0 keeps the discriminant nonzero.
        Model { a }
    }
}

/// `padic_signature` as a free function.
pub fn padic_signature(m: &Model, p: u64) -> Result<PAdicSignature> {
    m.padic_signature(p)
}

/// `invariants` as a free function; total, so it accepts raw coefficients.
pub fn invariants(a: &[Rational; 5]) -> Invariants {
    Invariants::from_coefficients(a)
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.a.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Model{self}")
    }
}

impl FromStr for Model {
    type Err = Error;

    /// Parses `[a1,a2,a3,a4,a6]` or the short form `[A,B]`; entries may be
    /// bare or quoted rationals.
    fn from_str(s: &str) -> Result<Model> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| {
                Error::Parse(format!("expected a bracketed coefficient list, got {s:?}"))
            })?;
        let entries = body
            .split(',')
            .map(|e| e.trim().trim_matches('"').parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        match <[Rational; 5]>::try_from(entries) {
            Ok(a) => Model::new(a),
            Err(v) if v.len() == 2 => {
                let [a, b] = <[Rational; 2]>::try_from(v).expect("length checked");
                Model::short(a, b)
            }
            Err(v) => Err(Error::Parse(format!(
                "expected 5 or 2 coefficients, got {}",
                v.len()
            ))),
        }
    }
}

impl Serialize for Model {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.a.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Model {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Rational>::deserialize(d)?;
        let a: [Rational; 5] = match v.len() {
            5 => v.try_into().expect("length checked"),
            2 => {
                let mut it = v.into_iter();
                let (a4, a6) = (it.next().unwrap(), it.next().unwrap());
                [Rational::zero(), Rational::zero(), Rational::zero(), a4, a6]
            }
            n => {
                return Err(serde::de::Error::custom(format!(
                    "expected 5 or 2 coefficients, got {n}"
                )))
            }
        };
        Model::new(a).map_err(serde::de::Error::custom)
    }
}

/// The p-adic valuations of `c4`, `c6` and the discriminant of one model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAdicSignature {
    pub vc4: Valuation,
    pub vc6: Valuation,
    pub vdelta: Valuation,
}

impl PAdicSignature {
    pub(crate) fn of(inv: &Invariants, p: u64) -> PAdicSignature {
        PAdicSignature {
            vc4: vp_unchecked(&inv.c4, p),
            vc6: vp_unchecked(&inv.c6, p),
            vdelta: vp_unchecked(&inv.delta, p),
        }
    }
}

/// A coordinate change `[u, r, s, t]` with `u != 0`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transformation {
    u: Rational,
    r: Rational,
    s: Rational,
    t: Rational,
}

impl Transformation {
    pub fn new(u: Rational, r: Rational, s: Rational, t: Rational) -> Result<Transformation> {
        if u.is_zero() {
            return Err(Error::Zero);
        }
        Ok(Transformation { u, r, s, t })
    }

    pub fn identity() -> Transformation {
        Transformation::scaling(Rational::one())
    }

    /// `[u, 0, 0, 0]`; panics if `u = 0`.
    pub fn scaling(u: Rational) -> Transformation {
        assert!(!u.is_zero(), "scaling by zero");
        Transformation {
            u,
            r: Rational::zero(),
            s: Rational::zero(),
            t: Rational::zero(),
        }
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }
    pub fn r(&self) -> &Rational {
        &self.r
    }
    pub fn s(&self) -> &Rational {
        &self.s
    }
    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn is_identity(&self) -> bool {
        *self == Transformation::identity()
    }

    /// `self` followed by `next`: applying the result equals applying
    /// `self` and then `next`.
    pub fn compose(&self, next: &Transformation) -> Transformation {
        let u1 = &self.u;
        let u1_2 = u1 * u1;
        let u1_3 = &u1_2 * u1;
        Transformation {
            u: u1 * &next.u,
            r: &self.r + &u1_2 * &next.r,
            s: &self.s + u1 * &next.s,
            t: &self.t + &u1_3 * &next.t + &u1_2 * &self.s * &next.r,
        }
    }

    pub fn invert(&self) -> Transformation {
        let u = &self.u;
        let u3 = u * u * u;
        Transformation {
            u: Rational::one() / u,
            r: -(&self.r) / (u * u),
            s: -(&self.s) / u,
            t: (&self.r * &self.s - &self.t) / u3,
        }
    }
}

/// Free-function forms of the group operations.
pub fn apply(t: &Transformation, m: &Model) -> Model {
    m.apply(t)
}

pub fn compose(t1: &Transformation, t2: &Transformation) -> Transformation {
    t1.compose(t2)
}

pub fn invert(t: &Transformation) -> Transformation {
    t.invert()
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{}]", self.u, self.r, self.s, self.t)
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Transformation{self}")
    }
}
