//! Quadratic twists `E^d` by square-free integers.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use serde::Serialize;

use crate::arith::{square_free_check, Rational};
use crate::error::{Error, Result};
use crate::weierstrass::{transform_coefficients, Model, Scalar};

pub(crate) fn check_twist_parameter(d: i64) -> Result<()> {
    if !square_free_check(d)? {
        return Err(Error::NotSquareFree(d));
    }
    Ok(())
}

/// The quadratic twist of `m` by the square-free integer `d`.
///
/// `a1` and `a3` are kept; the other coefficients become
/// `a2 d + a1^2 (d-1)/4`, `a4 d^2 + a1 a3 (d^2-1)/2` and
/// `a6 d^3 + a3^2 (d^3-1)/4`. The result has `c4 d^2`, `c6 d^3` and
/// `disc d^6`. It need not be integral when `a1` or `a3` is odd.
pub fn twist(m: &Model, d: i64) -> Result<Model> {
    check_twist_parameter(d)?;
    let [a1, a2, a3, a4, a6] = m.coefficients();
    let d = Rational::from(d);
    let d2 = &d * &d;
    let d3 = &d2 * &d;
    let one = Rational::one();
    let four = Rational::from(4);
    let two = Rational::from(2);
    let b2 = a2 * &d + a1 * a1 * (&d - &one) / &four;
    let b4 = a4 * &d2 + a1 * a3 * (&d2 - &one) / &two;
    let b6 = a6 * &d3 + a3 * a3 * (&d3 - &one) / &four;
    Model::new([a1.clone(), b2, a3.clone(), b4, b6])
}

/// An element `p + q*alpha` of `Q(alpha)` with `alpha^2 = 1/d`.
///
/// For `d = 1` the field collapses to `Q` and `alpha = 1`; values are kept
/// with `q = 0` in that case so equality stays structural.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticSurd {
    pub rational: Rational,
    pub alpha: Rational,
    #[serde(skip)]
    d: i64,
}

impl QuadraticSurd {
    pub fn new(rational: Rational, alpha: Rational, d: i64) -> QuadraticSurd {
        assert!(d != 0);
        if d == 1 {
            QuadraticSurd {
                rational: rational + alpha,
                alpha: Rational::zero(),
                d,
            }
        } else {
            QuadraticSurd { rational, alpha, d }
        }
    }

    pub fn from_rational(x: Rational, d: i64) -> QuadraticSurd {
        QuadraticSurd::new(x, Rational::zero(), d)
    }

    pub fn alpha(d: i64) -> QuadraticSurd {
        QuadraticSurd::new(Rational::zero(), Rational::one(), d)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.alpha.is_zero().then_some(&self.rational)
    }

    fn inv_d(&self) -> Rational {
        Rational::new(1, self.d).expect("d != 0")
    }

    /// `p^2 - q^2/d`.
    fn norm(&self) -> Rational {
        &self.rational * &self.rational - &self.alpha * &self.alpha * self.inv_d()
    }

    fn conjugate(&self) -> QuadraticSurd {
        QuadraticSurd::new(self.rational.clone(), -&self.alpha, self.d)
    }
}

impl From<i64> for QuadraticSurd {
    /// Constants carry no field information; `d` is adopted from the other
    /// operand on first use.
    fn from(n: i64) -> Self {
        QuadraticSurd {
            rational: Rational::from(n),
            alpha: Rational::zero(),
            d: 0,
        }
    }
}

fn field(a: &QuadraticSurd, b: &QuadraticSurd) -> i64 {
    match (a.d, b.d) {
        (0, d) | (d, 0) => d,
        (x, y) => {
            assert_eq!(x, y, "mixing elements of different quadratic fields");
            x
        }
    }
}

impl Add for QuadraticSurd {
    type Output = QuadraticSurd;
    fn add(self, rhs: QuadraticSurd) -> QuadraticSurd {
        let d = field(&self, &rhs);
        QuadraticSurd {
            rational: self.rational + rhs.rational,
            alpha: self.alpha + rhs.alpha,
            d,
        }
    }
}

impl Sub for QuadraticSurd {
    type Output = QuadraticSurd;
    fn sub(self, rhs: QuadraticSurd) -> QuadraticSurd {
        let d = field(&self, &rhs);
        QuadraticSurd {
            rational: self.rational - rhs.rational,
            alpha: self.alpha - rhs.alpha,
            d,
        }
    }
}

impl Mul for QuadraticSurd {
    type Output = QuadraticSurd;
    fn mul(self, rhs: QuadraticSurd) -> QuadraticSurd {
        let d = field(&self, &rhs);
        let alpha_sq = if d == 0 {
            // both constants, alpha parts are zero
            Rational::zero()
        } else {
            Rational::new(1, d).expect("d != 0")
        };
        let rational = &self.rational * &rhs.rational + &self.alpha * &rhs.alpha * alpha_sq;
        let alpha = &self.rational * &rhs.alpha + &self.alpha * &rhs.rational;
        if d == 0 {
            QuadraticSurd { rational, alpha, d }
        } else {
            QuadraticSurd::new(rational, alpha, d)
        }
    }
}

impl Div for QuadraticSurd {
    type Output = QuadraticSurd;
    fn div(self, rhs: QuadraticSurd) -> QuadraticSurd {
        let d = field(&self, &rhs);
        if rhs.alpha.is_zero() {
            return QuadraticSurd {
                rational: &self.rational / &rhs.rational,
                alpha: &self.alpha / &rhs.rational,
                d,
            };
        }
        let rhs = QuadraticSurd { d, ..rhs };
        let n = rhs.norm();
        let num = self * rhs.conjugate();
        QuadraticSurd::new(num.rational / &n, num.alpha / &n, d)
    }
}

impl Scalar for QuadraticSurd {}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.alpha.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "({})*alpha", self.alpha),
            (false, false) => write!(f, "{} + ({})*alpha", self.rational, self.alpha),
        }
    }
}

/// The coordinate change `[alpha, 0, a1(alpha-1)/2, a3(alpha^3-1)/2]` from
/// `E` to `E^d`, where `alpha = sqrt(1/d)` is kept symbolic.
///
/// In coordinates: `x = alpha^2 x'`,
/// `y = alpha^3 y' + a1 alpha^2 (alpha-1)/2 x' + a3 (alpha^3-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistMap {
    pub d: i64,
    pub u: QuadraticSurd,
    pub r: QuadraticSurd,
    pub s: QuadraticSurd,
    pub t: QuadraticSurd,
}

impl TwistMap {
    /// `u^2 = 1/d`, the only power of `alpha` the scaling laws need.
    pub fn u_squared(&self) -> Rational {
        Rational::new(1, self.d).expect("d != 0")
    }

    /// Pushes `m` through the map in exact `Q(alpha)` arithmetic.
    pub fn apply_symbolic(&self, m: &Model) -> [QuadraticSurd; 5] {
        let a = m
            .coefficients()
            .clone()
            .map(|c| QuadraticSurd::from_rational(c, self.d));
        transform_coefficients(&a, &self.u, &self.r, &self.s, &self.t)
    }

    /// The image model, if every coefficient is rational.
    pub fn apply(&self, m: &Model) -> Result<Model> {
        let a = self.apply_symbolic(m);
        let rational: Option<Vec<Rational>> = a.iter().map(|c| c.as_rational().cloned()).collect();
        let rational = rational.ok_or_else(|| {
            Error::Inconsistent("twist map produced irrational coefficients".into())
        })?;
        Model::new(rational.try_into().expect("five coefficients"))
    }
}

/// The symbolic map taking `m` to its twist by `d`.
pub fn twist_transformation(d: i64, m: &Model) -> Result<TwistMap> {
    check_twist_parameter(d)?;
    let alpha = QuadraticSurd::alpha(d);
    let one = QuadraticSurd::from_rational(Rational::one(), d);
    let half = QuadraticSurd::from_rational(Rational::new(1, 2).expect("nonzero"), d);
    let a1 = QuadraticSurd::from_rational(m.a1().clone(), d);
    let a3 = QuadraticSurd::from_rational(m.a3().clone(), d);
    let alpha3 = alpha.clone() * alpha.clone() * alpha.clone();
    Ok(TwistMap {
        d,
        u: alpha.clone(),
        r: QuadraticSurd::from_rational(Rational::zero(), d),
        s: a1 * (alpha - one.clone()) * half.clone(),
        t: a3 * (alpha3 - one) * half,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::Transformation;

    #[test]
    fn twist_examples() {
        let e = Model::from_ints([0, -1, 0, -6883, 222137]).unwrap();
        assert_eq!(
            twist(&e, 5).unwrap(),
            Model::from_ints([0, -5, 0, -172075, 27767125]).unwrap()
        );
        let e = Model::from_ints([1, 0, 1, -173, 879]).unwrap();
        assert_eq!(
            twist(&e, -7).unwrap(),
            Model::from_ints([1, -2, 1, -8453, -301583]).unwrap()
        );
        assert_eq!(twist(&e, 1).unwrap(), e);
    }

    #[test]
    fn twist_rejects_bad_parameters() {
        let e = Model::from_ints([0, 0, 0, 0, 1]).unwrap();
        assert_eq!(twist(&e, 0), Err(Error::Zero));
        assert_eq!(twist(&e, 12), Err(Error::NotSquareFree(12)));
        assert!(twist_transformation(-4, &e).is_err());
    }

    #[test]
    fn nonintegral_twist_is_accepted() {
        let e = Model::from_ints([1, 0, 1, -173, 879]).unwrap();
        let t = twist(&e, 3).unwrap();
        assert!(!t.is_integral());
        let (a, b) = (e.invariants(), t.invariants());
        assert_eq!(b.c4, a.c4 * Rational::from(9));
        assert_eq!(b.delta, a.delta * Rational::from(729));
    }

    #[test]
    fn map_for_d_one_is_identity() {
        let e = Model::from_ints([1, 0, 1, -173, 879]).unwrap();
        let map = twist_transformation(1, &e).unwrap();
        assert_eq!(map.u.as_rational(), Some(&Rational::one()));
        assert_eq!(map.s.as_rational(), Some(&Rational::zero()));
        assert_eq!(map.t.as_rational(), Some(&Rational::zero()));
        assert_eq!(map.apply(&e).unwrap(), e);
    }

    #[test]
    fn map_for_short_form() {
        let e = Model::from_ints([0, 0, 0, -1, 3]).unwrap();
        let map = twist_transformation(5, &e).unwrap();
        // x = x'/5, y = y'/5^(3/2): u = alpha, r = s = t = 0
        assert_eq!(map.u, QuadraticSurd::alpha(5));
        assert_eq!(map.u_squared(), Rational::new(1, 5).unwrap());
        let cube = map.u.clone() * map.u.clone() * map.u.clone();
        assert_eq!(
            cube,
            QuadraticSurd::new(Rational::zero(), Rational::new(1, 5).unwrap(), 5)
        );
        assert_eq!(map.s.as_rational(), Some(&Rational::zero()));
        assert_eq!(map.t.as_rational(), Some(&Rational::zero()));
    }

    #[test]
    fn map_reproduces_twist_formula() {
        let e = Model::from_ints([1, 0, 1, -173, 879]).unwrap();
        let map = twist_transformation(-7, &e).unwrap();
        assert_eq!(map.u, QuadraticSurd::alpha(-7));
        assert_eq!(map.apply(&e).unwrap(), twist(&e, -7).unwrap());

        let e = Model::from_ints([1, -1, 1, 3, -5]).unwrap();
        for d in [-15, -6, -3, -2, -1, 2, 3, 5, 6, 7, 10, 13] {
            let map = twist_transformation(d, &e).unwrap();
            assert_eq!(map.apply(&e).unwrap(), twist(&e, d).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn double_twist_is_rescaling() {
        let e = Model::from_ints([1, -1, 1, 3, -5]).unwrap();
        for d in [-7, -2, 3, 10] {
            let tt = twist(&twist(&e, d).unwrap(), d).unwrap().invariants();
            let scaled = e
                .apply(&Transformation::scaling(Rational::new(1, d).unwrap()))
                .invariants();
            assert_eq!(
                (tt.c4, tt.c6, tt.delta),
                (scaled.c4, scaled.c6, scaled.delta)
            );
        }
    }
}
