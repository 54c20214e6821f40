//! Period lattices, the real period and the imaginary period.
//!
//! The lattice of a model is computed from the roots of its 2-division
//! cubic with the arithmetic-geometric mean. Conventions:
//!
//! * `omega_real` is the least positive real period.
//! * For a positive discriminant the lattice is rectangular and
//!   `omega_complex` is purely imaginary.
//! * For a negative discriminant `omega_complex = -omega_real/2 + i y`.
//!
//! In both cases `Im(omega_complex) > 0`.

pub mod agm;
pub mod real;
pub mod roots;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minimal::minimize;
use crate::weierstrass::Model;

use agm::{agm, agm_real};
pub use real::{Complex, Real};
use roots::{division_cubic_roots, CubicRoots};

/// Default working precision in bits.
pub const DEFAULT_PRECISION_BITS: u32 = 128;
pub const MIN_PRECISION_BITS: u32 = 64;
/// Largest denominator accepted when recognizing `Re(omega_complex)/omega_real`.
pub const RATIO_DENOMINATOR_BOUND: u64 = 10_000;

const GUARD_BITS: usize = 64;

fn working_precision(bits: u32) -> Result<usize> {
    if bits < MIN_PRECISION_BITS {
        return Err(Error::Precision(format!(
            "precision_bits must be at least {MIN_PRECISION_BITS}, got {bits}"
        )));
    }
    Ok(bits as usize + GUARD_BITS)
}

/// Significant decimal digits justified by `bits` of precision.
pub fn decimal_digits(bits: u32) -> usize {
    ((bits.saturating_sub(8)) as f64 * std::f64::consts::LOG10_2).floor() as usize
}

/// Number of connected components of the real locus.
pub fn c_infinity(m: &Model) -> Result<u32> {
    let delta = m.discriminant();
    if delta.is_zero() {
        return Err(Error::Singular);
    }
    Ok(if delta.is_positive() { 2 } else { 1 })
}

/// A basis of the period lattice of one specific model.
#[derive(Clone, Debug)]
pub struct PeriodLattice {
    pub omega_real: Real,
    pub omega_complex: Complex,
    pub precision_bits: u32,
}

impl PeriodLattice {
    /// `Re(omega_complex) / omega_real`.
    pub fn ratio(&self) -> Real {
        &self.omega_complex.re / &self.omega_real
    }
}

/// The period lattice of `m` itself (no minimization).
pub fn lattice_periods(m: &Model, precision_bits: u32) -> Result<PeriodLattice> {
    let wp = working_precision(precision_bits)?;
    let inv = m.invariants();
    let roots = division_cubic_roots(&inv.b2, &inv.b4, &inv.b6, &inv.c4, inv.delta.signum(), wp)?;
    let pi = Real::pi(wp);
    let (omega_real, omega_complex) = match roots {
        CubicRoots::ThreeReal { e1, e2, e3 } => {
            let s13 = (&e1 - &e3).sqrt();
            let s12 = (&e1 - &e2).sqrt();
            let s23 = (&e2 - &e3).sqrt();
            let w1 = &pi / agm_real(&s13, &s12, wp)?;
            let w2 = &pi / agm_real(&s13, &s23, wp)?;
            (w1, Complex::new(Real::zero(wp), w2))
        }
        CubicRoots::OneReal { e1, e2 } => {
            let z = (&Complex::real(e1) - &e2).sqrt();
            let mean = agm(&z, &z.conj(), wp)?;
            let w1 = &pi / &mean.re;
            let y = &pi / agm_real(&z.abs(), &z.im.abs(), wp)?.ldexp(1);
            (w1.clone(), Complex::new(-(w1.ldexp(-1)), y))
        }
    };
    Ok(PeriodLattice {
        omega_real,
        omega_complex,
        precision_bits,
    })
}

/// Integral of `|omega|` over the real points of `m` itself: `c_inf` times
/// the least positive real period of `m`'s lattice.
pub fn raw_model_period(m: &Model, precision_bits: u32) -> Result<Real> {
    let c = c_infinity(m)?;
    let lattice = lattice_periods(m, precision_bits)?;
    Ok(lattice.omega_real * i64::from(c))
}

/// The real period: the integral of `|omega|` over the real points of a
/// global minimal model.
pub fn real_period(m: &Model, precision_bits: u32) -> Result<Real> {
    raw_model_period(&minimize(m)?.minimal, precision_bits)
}

/// Convergent `p/q` of `x` with `q <= bound` and `|x - p/q| <= tol`.
pub fn recognize_rational(x: &Real, bound: u64, tol: &Real) -> Option<(BigInt, BigInt)> {
    let prec = x.precision();
    let bound = BigInt::from(bound);
    let (mut h_prev, mut h) = (BigInt::from(0), BigInt::from(1));
    let (mut k_prev, mut k) = (BigInt::from(1), BigInt::from(0));
    let mut rest = x.clone();
    for _ in 0..64 {
        let a = rest.floor();
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if k_next > bound {
            return None;
        }
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
        let approx = Real::from_bigint(&h, prec) / Real::from_bigint(&k, prec);
        if (x - &approx).abs() <= *tol {
            return Some((h, k));
        }
        let frac = &rest - Real::from_bigint(&a, prec);
        if frac.is_zero() {
            return None;
        }
        rest = Real::from_i64(1, prec) / frac;
    }
    None
}

/// The imaginary period and the lattice coordinates used to reach it.
#[derive(Clone, Debug)]
pub struct ImaginaryPeriod {
    /// `Im` of the imaginary period, normalized positive.
    pub value: Real,
    pub k1: i64,
    pub k2: i64,
}

/// Recovers the imaginary period `k1 omega_complex - k2 omega_real` of the
/// minimal model, with `k2/k1` recognized from `Re(omega_complex)/omega_real`.
pub fn imaginary_period(m: &Model, precision_bits: u32) -> Result<ImaginaryPeriod> {
    let lattice = lattice_periods(&minimize(m)?.minimal, precision_bits)?;
    imaginary_period_of(&lattice)
}

fn imaginary_period_of(lattice: &PeriodLattice) -> Result<ImaginaryPeriod> {
    let wp = lattice.omega_real.precision();
    let bits = lattice.precision_bits;
    let tol = Real::pow2(16 - bits as i32, wp);
    let ratio = lattice.ratio();
    let (k2, k1) = recognize_rational(&ratio, RATIO_DENOMINATOR_BOUND, &tol).ok_or_else(|| {
        Error::AmbiguousLattice {
            ratio: ratio.to_decimal_string(decimal_digits(bits)),
            bound: RATIO_DENOMINATOR_BOUND,
            tolerance: 2f64.powi(16 - bits as i32),
        }
    })?;
    // convergents are already coprime with positive denominator
    let (k1, k2) = (
        k1.to_i64().expect("bounded by 10^4"),
        k2.to_i64()
            .ok_or_else(|| Error::Precision("lattice coordinate overflow".into()))?,
    );
    let im = &lattice.omega_complex.im * k1;
    Ok(ImaginaryPeriod {
        value: im.abs(),
        k1,
        k2,
    })
}

/// Everything the periods command reports for one curve.
#[derive(Clone, Debug)]
pub struct PeriodReport {
    pub omega: Real,
    pub omega_minus: ImaginaryPeriod,
    pub c_inf: u32,
    /// Lattice of the minimal model.
    pub lattice: PeriodLattice,
}

pub fn period_report(m: &Model, precision_bits: u32) -> Result<PeriodReport> {
    let minimal = minimize(m)?.minimal;
    let c_inf = c_infinity(&minimal)?;
    let lattice = lattice_periods(&minimal, precision_bits)?;
    let omega = &lattice.omega_real * i64::from(c_inf);
    let omega_minus = imaginary_period_of(&lattice)?;
    Ok(PeriodReport {
        omega,
        omega_minus,
        c_inf,
        lattice,
    })
}

/// Wire form of [`PeriodReport`]; reals are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReportJson {
    pub omega: String,
    pub omega_minus_im: String,
    pub c_inf: u32,
    pub k1: i64,
    pub k2: i64,
    pub precision_bits: u32,
}

impl PeriodReport {
    pub fn to_json(&self) -> PeriodReportJson {
        let digits = decimal_digits(self.lattice.precision_bits);
        PeriodReportJson {
            omega: self.omega.to_decimal_string(digits),
            omega_minus_im: self.omega_minus.value.to_decimal_string(digits),
            c_inf: self.c_inf,
            k1: self.omega_minus.k1,
            k2: self.omega_minus.k2,
            precision_bits: self.lattice.precision_bits,
        }
    }
}
