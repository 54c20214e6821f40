//! Arbitrary-precision real and complex numbers.
//!
//! [`Real`] wraps an `astro_float::BigFloat` together with its working
//! precision, so arithmetic reads like ordinary operator code. Binary
//! operations run at the larger of the two operand precisions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    prec: usize,
}

impl Real {
    fn wrap(v: BigFloat, prec: usize) -> Real {
        debug_assert!(!v.is_nan(), "NaN in high-precision arithmetic");
        Real { v, prec }
    }

    pub fn zero(prec: usize) -> Real {
        Real::wrap(BigFloat::from_word(0, prec), prec)
    }

    pub fn from_i64(n: i64, prec: usize) -> Real {
        Real::wrap(BigFloat::from_i64(n, prec), prec)
    }

    pub fn from_f64(x: f64, prec: usize) -> Real {
        Real::wrap(BigFloat::from_f64(x, prec), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: usize) -> Real {
        if n.is_zero() {
            return Real::zero(prec);
        }
        let words = n.magnitude().to_u64_digits();
        let sign = if n.is_negative() {
            Sign::Neg
        } else {
            Sign::Pos
        };
        let e = (64 * words.len()) as i32;
        let mut v = BigFloat::from_words(&words, sign, e);
        v.set_precision(prec, RM).expect("valid precision");
        Real::wrap(v, prec)
    }

    /// Correctly rounded up to one final division.
    pub fn from_rational(x: &Rational, prec: usize) -> Real {
        let n = Real::from_bigint(x.numer(), prec + 64);
        let d = Real::from_bigint(x.denom(), prec + 64);
        Real::wrap(n.v.div(&d.v, prec, RM), prec)
    }

    pub fn pi(prec: usize) -> Real {
        let mut cc = Consts::new().expect("constant cache");
        Real::wrap(cc.pi(prec, RM), prec)
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn with_precision(&self, prec: usize) -> Real {
        let mut v = self.v.clone();
        v.set_precision(prec, RM).expect("valid precision");
        Real::wrap(v, prec)
    }

    pub fn sqrt(&self) -> Real {
        assert!(!self.is_negative(), "sqrt of a negative Real");
        Real::wrap(self.v.sqrt(self.prec, RM), self.prec)
    }

    pub fn abs(&self) -> Real {
        Real::wrap(self.v.abs(), self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.v.is_zero() && self.v.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.v.is_zero() && self.v.is_positive()
    }

    /// `self * 2^k`, exact.
    pub fn ldexp(&self, k: i32) -> Real {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = self.v.clone();
        let e = v.exponent().expect("finite value");
        v.set_exponent(e + k);
        Real::wrap(v, self.prec)
    }

    /// `2^k` at the given precision.
    pub fn pow2(k: i32, prec: usize) -> Real {
        Real::from_i64(1, prec).ldexp(k)
    }

    /// Binary exponent `e` with `2^(e-1) <= |self| < 2^e`; `None` for zero.
    pub fn exponent(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            self.v.exponent()
        }
    }

    /// `(sign, M, shift)` with `self = sign * M * 2^shift`.
    fn parts(&self) -> Option<(bool, BigUint, i64)> {
        let (words, _, sign, e, _) = self.v.as_raw_parts()?;
        let m = BigUint::from_slice(
            &words
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<_>>(),
        );
        if m.is_zero() {
            return None;
        }
        Some((sign == Sign::Neg, m, e as i64 - 64 * words.len() as i64))
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        let Some((neg, m, shift)) = self.parts() else {
            return BigInt::zero();
        };
        let m = BigInt::from(m);
        let m = if neg { -m } else { m };
        if shift >= 0 {
            m << shift as usize
        } else {
            m.div_floor(&(BigInt::one() << (-shift) as usize))
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.parts() {
            None => 0.0,
            Some((neg, m, shift)) => {
                let bits = m.bits() as i64;
                let keep = 64.min(bits);
                let top = (&m >> (bits - keep) as usize)
                    .iter_u64_digits()
                    .next()
                    .unwrap_or(0);
                let x = top as f64 * 2f64.powi((shift + bits - keep).clamp(-2000, 2000) as i32);
                if neg {
                    -x
                } else {
                    x
                }
            }
        }
    }

    /// Decimal rendering with `digits` significant digits, rounded half-up.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        let Some((neg, m, shift)) = self.parts() else {
            return "0".to_string();
        };
        // |x| in [2^(e-1), 2^e); guess the decimal exponent and fix it up.
        let e = self.exponent().unwrap_or(0) as f64;
        let mut k = digits as i64 - 1 - ((e - 1.0) * std::f64::consts::LOG10_2).floor() as i64;
        let mut s;
        loop {
            s = scaled_round(&m, shift, k).to_string();
            if s.len() > digits {
                k -= 1;
            } else if s.len() < digits {
                k += 1;
            } else {
                break;
            }
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        let len = s.len() as i64;
        if k <= 0 {
            out.push_str(&s);
            out.extend(std::iter::repeat_n('0', (-k) as usize));
        } else if k >= len {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (k - len) as usize));
            out.push_str(&s);
        } else {
            let (int, frac) = s.split_at((len - k) as usize);
            out.push_str(int);
            out.push('.');
            out.push_str(frac);
        }
        out
    }

    pub fn max(&self, other: &Real) -> Real {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }
}

/// `round(M * 2^shift * 10^k)` for `M > 0`.
fn scaled_round(m: &BigUint, shift: i64, k: i64) -> BigUint {
    let ten = BigUint::from(10u32);
    let (mut num, mut den) = (m.clone(), BigUint::one());
    if k >= 0 {
        num *= ten.pow(k as u32);
    } else {
        den *= ten.pow((-k) as u32);
    }
    if shift >= 0 {
        num <<= shift as usize;
    } else {
        den <<= (-shift) as usize;
    }
    (num * 2u32 + &den) / (den * 2u32)
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec as f64) * std::f64::consts::LOG10_2).floor() as usize;
        f.write_str(&self.to_decimal_string(f.precision().unwrap_or(digits)))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal_string(30))
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.prec.max(rhs.prec);
                Real::wrap(self.v.$m(&rhs.v, p, RM), p)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
        impl $tr<i64> for &Real {
            type Output = Real;
            fn $m(self, rhs: i64) -> Real {
                self.$m(&Real::from_i64(rhs, self.prec))
            }
        }
        impl $tr<i64> for Real {
            type Output = Real;
            fn $m(self, rhs: i64) -> Real {
                (&self).$m(&Real::from_i64(rhs, self.prec))
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.neg(), self.prec)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.clone().neg(), self.prec)
    }
}

/// `re + i*im`.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Complex {
        Complex { re, im }
    }

    pub fn real(re: Real) -> Complex {
        let im = Real::zero(re.precision());
        Complex { re, im }
    }

    pub fn conj(&self) -> Complex {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &Real) -> Complex {
        Complex::new(&self.re * k, &self.im * k)
    }

    /// Principal branch: `Re >= 0`, and `Im` has the sign of `self.im` on the cut.
    pub fn sqrt(&self) -> Complex {
        let prec = self.re.precision().max(self.im.precision());
        if self.re.is_zero() && self.im.is_zero() {
            return Complex::real(Real::zero(prec));
        }
        let r = self.abs();
        if !self.re.is_negative() {
            let t = ((&r + &self.re).ldexp(-1)).sqrt();
            let im = &self.im / t.ldexp(1);
            Complex::new(t, im)
        } else {
            let t = ((&r - &self.re).ldexp(-1)).sqrt();
            let re = self.im.abs() / t.ldexp(1);
            let im = if self.im.is_negative() { -t } else { t };
            Complex::new(re, im)
        }
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let n = rhs.norm_sqr();
        let num = self * &rhs.conj();
        Complex::new(&num.re / &n, &num.im / &n)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}
