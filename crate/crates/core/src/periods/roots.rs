//! Roots of the 2-division cubic `4x^3 + b2 x^2 + 2 b4 x + b6`.
//!
//! Real roots are isolated exactly (the critical points are
//! `(-b2 +- sqrt(c4)) / 12`, and the number of real roots follows from the
//! sign of the discriminant), then refined by Newton's method safeguarded
//! with bisection. The complex pair, when present, comes from deflation and
//! a few complex Newton steps.

use crate::arith::Rational;
use crate::error::{Error, Result};

use super::real::{Complex, Real};

/// The roots, ordered.
#[derive(Clone, Debug)]
pub enum CubicRoots {
    /// `e1 > e2 > e3`.
    ThreeReal { e1: Real, e2: Real, e3: Real },
    /// `e1` real, `e2` with positive imaginary part; the third root is `conj(e2)`.
    OneReal { e1: Real, e2: Complex },
}

struct Cubic {
    // 4, b2, 2 b4, b6
    c: [Real; 4],
}

impl Cubic {
    fn eval(&self, x: &Real) -> Real {
        let [c3, c2, c1, c0] = &self.c;
        ((c3 * x + c2) * x + c1) * x + c0
    }

    fn deriv(&self, x: &Real) -> Real {
        let [c3, c2, c1, _] = &self.c;
        (c3 * x * 3 + c2 * 2) * x + c1
    }

    fn eval_c(&self, z: &Complex) -> Complex {
        let [c3, c2, c1, c0] = &self.c;
        let mut acc = Complex::real(c3.clone());
        for c in [c2, c1, c0] {
            acc = &acc * z;
            acc.re = &acc.re + c;
        }
        acc
    }

    fn deriv_c(&self, z: &Complex) -> Complex {
        let [c3, c2, c1, _] = &self.c;
        let mut acc = Complex::real(c3 * 3);
        acc = &acc * z;
        acc.re = &acc.re + c2 * 2;
        acc = &acc * z;
        acc.re = &acc.re + c1;
        acc
    }
}

fn sign(x: &Real) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Root of `f` in `[lo, hi]`, where `f(lo)` and `f(hi)` do not share a sign.
fn refine(f: &Cubic, mut lo: Real, mut hi: Real, scale: &Real, prec: usize) -> Result<Real> {
    let flo = f.eval(&lo);
    if flo.is_zero() {
        return Ok(lo);
    }
    let fhi = f.eval(&hi);
    if fhi.is_zero() {
        return Ok(hi);
    }
    let slo = sign(&flo);
    if slo == sign(&fhi) {
        return Err(Error::Precision("root bracket lost its sign change".into()));
    }
    let tol = scale * Real::pow2(-(prec as i32) + 8, prec);
    let mut x = (&lo + &hi).ldexp(-1);
    let mut converged = 0;
    for _ in 0..(4 * prec + 400) {
        let fx = f.eval(&x);
        match sign(&fx) {
            0 => return Ok(x),
            s if s == slo => lo = x.clone(),
            _ => hi = x.clone(),
        }
        let dfx = f.deriv(&x);
        let mut next = if dfx.is_zero() {
            None
        } else {
            Some(&x - &fx / &dfx)
        };
        if let Some(n) = &next {
            if !(n > &lo && n < &hi) {
                next = None;
            }
        }
        let next = next.unwrap_or_else(|| (&lo + &hi).ldexp(-1));
        let step = (&next - &x).abs();
        x = next;
        // two consecutive tiny steps: the quadratic phase has finished
        if step <= tol || (&hi - &lo) <= tol {
            converged += 1;
            if converged == 2 {
                return Ok(x);
            }
        } else {
            converged = 0;
        }
    }
    Err(Error::Precision(
        "Newton refinement did not converge".into(),
    ))
}

/// Roots of `4x^3 + b2 x^2 + 2 b4 x + b6` at `prec` bits. `delta_sign` is the
/// sign of the curve's discriminant (which has the sign of the cubic's).
pub fn division_cubic_roots(
    b2: &Rational,
    b4: &Rational,
    b6: &Rational,
    c4: &Rational,
    delta_sign: i32,
    prec: usize,
) -> Result<CubicRoots> {
    if delta_sign == 0 {
        return Err(Error::Singular);
    }
    let two_b4 = b4 * Rational::from(2);
    let f = Cubic {
        c: [
            Real::from_i64(4, prec),
            Real::from_rational(b2, prec),
            Real::from_rational(&two_b4, prec),
            Real::from_rational(b6, prec),
        ],
    };
    // Cauchy bound on |root|
    let quarter = Rational::new(1, 4).expect("nonzero");
    let bound_q = Rational::one()
        + [b2, &two_b4, b6]
            .into_iter()
            .map(|c| c.abs() * &quarter)
            .max()
            .expect("nonempty");
    let bound = Real::from_rational(&bound_q, prec);
    let neg_bound = -&bound;

    let crit = if c4.is_positive() {
        let sq = Real::from_rational(c4, prec).sqrt();
        let mb2 = -Real::from_rational(b2, prec);
        Some(((&mb2 - &sq) / 12, (&mb2 + &sq) / 12))
    } else {
        None
    };

    if delta_sign > 0 {
        let (x1, x2) = crit.ok_or_else(|| {
            Error::Inconsistent("positive discriminant without critical points".into())
        })?;
        let e3 = refine(&f, neg_bound, x1.clone(), &bound, prec)?;
        let e2 = refine(&f, x1, x2.clone(), &bound, prec)?;
        let e1 = refine(&f, x2, bound.clone(), &bound, prec)?;
        return Ok(CubicRoots::ThreeReal { e1, e2, e3 });
    }

    let e1 = match crit {
        None => refine(&f, neg_bound, bound.clone(), &bound, prec)?,
        Some((x1, x2)) => {
            if f.eval(&x2).is_positive() {
                refine(&f, neg_bound, x1, &bound, prec)?
            } else {
                refine(&f, x2, bound.clone(), &bound, prec)?
            }
        }
    };
    // 4x^3 + b2 x^2 + 2b4 x + b6 = (x - e1)(4x^2 + p x + q)
    let p = &f.c[1] + &e1 * 4;
    let q = &f.c[2] + &p * &e1;
    let disc = &q * 16 - &p * &p;
    if !disc.is_positive() {
        return Err(Error::Precision(
            "deflated quadratic lost its complex pair".into(),
        ));
    }
    let mut z = Complex::new(-&p / 8, disc.sqrt() / 8);
    for _ in 0..4 {
        let fz = f.eval_c(&z);
        let dz = f.deriv_c(&z);
        if dz.norm_sqr().is_zero() {
            break;
        }
        z = &z - &(&fz / &dz);
    }
    if !z.im.is_positive() {
        z = z.conj();
    }
    Ok(CubicRoots::OneReal { e1, e2: z })
}
