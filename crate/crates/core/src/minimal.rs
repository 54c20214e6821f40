//! Global minimal models and the scaling factor `u~` of a quadratic twist.
//!
//! Two independent routes live here. [`minimize`] reduces any rational model
//! to a global minimal model (Laska-Kraus-Connell) and reports the exact
//! coordinate change. [`compute_utilde`] instead reads the per-prime
//! factors `u_p` off the valuations of `c4`, `c6` and the discriminant of a
//! minimal `E` via a fixed case table, without ever touching `E^d`.
//! [`minimal_model_of_twist`] runs both and insists they agree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::factor::{factor, primes_with_power_dividing};
use crate::arith::valuation::{vp_int, vp_unchecked};
use crate::arith::{is_prime, odd_prime_divisors, Rational, Valuation};
use crate::error::{Error, Result};
use crate::twist::{check_twist_parameter, twist};
use crate::weierstrass::{Invariants, Model, PAdicSignature, Transformation};

/// Which branch of the per-prime case analysis applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseLabel {
    /// odd `p | d`, `lambda < 6` or `p = 3` with `v3(c6) = 5`
    #[serde(rename = "1a")]
    OddSmallLambda,
    /// odd `p | d`, otherwise
    #[serde(rename = "1b")]
    OddLargeLambda,
    #[serde(rename = "odd-p-not-dividing-d")]
    OddCoprime,
    /// `d = 1 mod 4`
    #[serde(rename = "2a")]
    TwoD1,
    #[serde(rename = "2b-i")]
    TwoD3Grow,
    #[serde(rename = "2b-ii")]
    TwoD3Shrink,
    #[serde(rename = "2b-iii")]
    TwoD3Same,
    #[serde(rename = "2c-i")]
    TwoD2Grow18,
    #[serde(rename = "2c-ii")]
    TwoD2Shrink18,
    #[serde(rename = "2c-iii")]
    TwoD2Grow6,
    #[serde(rename = "2c-iv")]
    TwoD2Shrink6,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 11] = [
        CaseLabel::OddSmallLambda,
        CaseLabel::OddLargeLambda,
        CaseLabel::OddCoprime,
        CaseLabel::TwoD1,
        CaseLabel::TwoD3Grow,
        CaseLabel::TwoD3Shrink,
        CaseLabel::TwoD3Same,
        CaseLabel::TwoD2Grow18,
        CaseLabel::TwoD2Shrink18,
        CaseLabel::TwoD2Grow6,
        CaseLabel::TwoD2Shrink6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::OddSmallLambda => "1a",
            CaseLabel::OddLargeLambda => "1b",
            CaseLabel::OddCoprime => "odd-p-not-dividing-d",
            CaseLabel::TwoD1 => "2a",
            CaseLabel::TwoD3Grow => "2b-i",
            CaseLabel::TwoD3Shrink => "2b-ii",
            CaseLabel::TwoD3Same => "2b-iii",
            CaseLabel::TwoD2Grow18 => "2c-i",
            CaseLabel::TwoD2Shrink18 => "2c-ii",
            CaseLabel::TwoD2Grow6 => "2c-iii",
            CaseLabel::TwoD2Shrink6 => "2c-iv",
        }
    }

    /// `v_p(disc(E^d_min)) - v_p(disc(E))`.
    pub fn discriminant_shift(self) -> i64 {
        match self {
            CaseLabel::OddSmallLambda => 6,
            CaseLabel::OddLargeLambda => -6,
            CaseLabel::OddCoprime | CaseLabel::TwoD1 | CaseLabel::TwoD3Same => 0,
            CaseLabel::TwoD3Grow => 12,
            CaseLabel::TwoD3Shrink => -12,
            CaseLabel::TwoD2Grow18 => 18,
            CaseLabel::TwoD2Shrink18 => -18,
            CaseLabel::TwoD2Grow6 => 6,
            CaseLabel::TwoD2Shrink6 => -6,
        }
    }

    /// The local factor `u_p` this branch assigns at the prime `p`.
    pub fn local_factor(self, p: u64) -> Rational {
        let half = || Rational::new(1, 2).expect("nonzero");
        match self {
            CaseLabel::OddLargeLambda => Rational::from(p),
            CaseLabel::OddSmallLambda
            | CaseLabel::OddCoprime
            | CaseLabel::TwoD1
            | CaseLabel::TwoD3Same
            | CaseLabel::TwoD2Grow6 => Rational::one(),
            CaseLabel::TwoD3Grow | CaseLabel::TwoD2Grow18 => half(),
            CaseLabel::TwoD3Shrink | CaseLabel::TwoD2Shrink6 => Rational::from(2),
            CaseLabel::TwoD2Shrink18 => Rational::from(4),
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `min{3 v(c4), 2 v(c6), v(disc)}` at `p`.
pub fn lambda_v(m: &Model, p: u64) -> Result<Valuation> {
    let sig = m.padic_signature(p)?;
    Ok(lambda_of(&sig))
}

fn lambda_of(sig: &PAdicSignature) -> Valuation {
    sig.vc4.scale(3).min(sig.vc6.scale(2)).min(sig.vdelta)
}

/// `(2^-k c6 * factor) mod 4`, or `None` when `2^k` does not divide `c6`.
fn scaled_c6_mod4(c6: &Rational, k: u32, factor: i64) -> Option<i64> {
    let c6 = c6.to_integer()?;
    let pow = BigInt::one() << k;
    let (q, r) = c6.div_rem(&pow);
    if !r.is_zero() {
        return None;
    }
    (q * factor).mod_floor(&BigInt::from(4)).to_i64()
}

/// Every case whose stated condition holds for the given data. The
/// "otherwise" branches fire only when none of their siblings do, so a
/// well-formed table returns exactly one label.
fn matching_cases(inv: &Invariants, sig: &PAdicSignature, d: i64, p: u64) -> Vec<CaseLabel> {
    let (a, b, c) = (sig.vc4, sig.vc6, sig.vdelta);
    let mut hits = Vec::new();
    if p != 2 {
        if !d.unsigned_abs().is_multiple_of(p) {
            hits.push(CaseLabel::OddCoprime);
        } else if lambda_of(sig) < Valuation::Finite(6) || (p == 3 && b.is(5)) {
            hits.push(CaseLabel::OddSmallLambda);
        } else {
            hits.push(CaseLabel::OddLargeLambda);
        }
        return hits;
    }
    match d.rem_euclid(4) {
        1 => hits.push(CaseLabel::TwoD1),
        3 => {
            if (a.is(0) && b.is(0) && c.at_least(0)) || (a.at_least(4) && b.is(3) && c.is(0)) {
                hits.push(CaseLabel::TwoD3Grow);
            }
            if (a.is(4) && b.is(6) && c.at_least(12) && scaled_c6_mod4(&inv.c6, 6, d) == Some(3))
                || (a.at_least(8)
                    && b.is(9)
                    && c.is(12)
                    && scaled_c6_mod4(&inv.c6, 9, d) == Some(1))
            {
                hits.push(CaseLabel::TwoD3Shrink);
            }
            if hits.is_empty() {
                hits.push(CaseLabel::TwoD3Same);
            }
        }
        2 => {
            let w = d / 2;
            if a.is(0) && b.is(0) && c.at_least(0) {
                hits.push(CaseLabel::TwoD2Grow18);
            }
            if a.is(6) && b.is(9) && c.at_least(18) && scaled_c6_mod4(&inv.c6, 9, w) == Some(3) {
                hits.push(CaseLabel::TwoD2Shrink18);
            }
            if a.is(4)
                || a.is(5)
                || b.is(3)
                || b.is(5)
                || b.is(7)
                || (a.at_least(6) && b.is(6) && c.is(6) && scaled_c6_mod4(&inv.c6, 6, w) == Some(3))
            {
                hits.push(CaseLabel::TwoD2Grow6);
            }
            if hits.is_empty() {
                hits.push(CaseLabel::TwoD2Shrink6);
            }
        }
        _ => unreachable!("square-free d is never 0 mod 4"),
    }
    hits
}

/// Assigns the unique case label for `(E, d, p)`; `inv` must belong to a
/// minimal model.
fn classify(inv: &Invariants, d: i64, p: u64) -> Result<CaseLabel> {
    let sig = PAdicSignature::of(inv, p);
    let hits = matching_cases(inv, &sig, d, p);
    match hits.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::Inconsistent(format!(
            "case table overlap at p = {p}, d = {d}, signature ({}, {}, {}): {hits:?}",
            sig.vc4, sig.vc6, sig.vdelta
        ))),
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(())
}

/// Invariants of a minimal model of `m`; the case table is stated for minimal curves.
fn minimal_invariants(m: &Model) -> Result<Invariants> {
    Ok(minimize(m)?.minimal.invariants())
}

/// Predicted `v_p(disc)` of a minimal model of the twist `E^d`.
pub fn predict_twist_disc_valuation(m: &Model, d: i64, p: u64) -> Result<Valuation> {
    check_prime(p)?;
    check_twist_parameter(d)?;
    let inv = minimal_invariants(m)?;
    let label = classify(&inv, d, p)?;
    Ok(vp_unchecked(&inv.delta, p) + label.discriminant_shift())
}

/// The local factor `u_p` and the case that produced it.
pub fn compute_up(m: &Model, d: i64, p: u64) -> Result<(Rational, CaseLabel)> {
    check_prime(p)?;
    check_twist_parameter(d)?;
    let inv = minimal_invariants(m)?;
    let label = classify(&inv, d, p)?;
    Ok((label.local_factor(p), label))
}

/// One prime's contribution to `u~`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFactor {
    pub p: u64,
    pub u_p: Rational,
    pub case: CaseLabel,
}

/// `u~` together with its nontrivially-computed local factors (the prime 2
/// and the odd primes dividing `d`; every other prime contributes 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UTildeResult {
    pub per_prime: Vec<LocalFactor>,
    pub utilde: Rational,
}

impl UTildeResult {
    pub fn get(&self, p: u64) -> Option<&LocalFactor> {
        self.per_prime.iter().find(|f| f.p == p)
    }

    pub fn case_labels(&self) -> Vec<CaseLabel> {
        self.per_prime.iter().map(|f| f.case).collect()
    }

    /// Whether some odd prime divides the integer `2 u~`.
    pub fn has_odd_prime_factor(&self) -> bool {
        let twice = &self.utilde * Rational::from(2);
        let mut n = twice.to_integer().expect("2u~ is integral").abs();
        while n.is_even() && !n.is_zero() {
            n >>= 1;
        }
        n > BigInt::one()
    }
}

/// `u~ = prod_p u_p` for twisting `m` by `d`. A non-minimal `m` is
/// minimized first.
pub fn compute_utilde(m: &Model, d: i64) -> Result<UTildeResult> {
    let primes = odd_prime_divisors(d)?;
    let inv = minimal_invariants(m)?;
    let mut per_prime = Vec::with_capacity(primes.len() + 1);
    let mut utilde = Rational::one();
    for p in std::iter::once(2).chain(primes) {
        let case = classify(&inv, d, p)?;
        let u_p = case.local_factor(p);
        utilde *= &u_p;
        per_prime.push(LocalFactor { p, u_p, case });
    }
    Ok(UTildeResult { per_prime, utilde })
}

/// A global minimal model and the coordinate change reaching it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalModel {
    pub minimal: Model,
    /// Takes the input model to `minimal`.
    pub map: Transformation,
}

/// Least `n > 0` with every `a_i n^i` integral.
fn integralizing_scale(a: &[Rational; 5]) -> BigInt {
    const WEIGHTS: [u32; 5] = [1, 2, 3, 4, 6];
    let denom = crate::arith::rational::common_denominator(a.iter());
    let mut n = BigInt::one();
    if denom.is_one() {
        return n;
    }
    for (p, _) in factor(denom.magnitude()) {
        let p = BigInt::from(p);
        let mut k = 0u32;
        for (c, w) in a.iter().zip(WEIGHTS) {
            if c.is_zero() {
                continue;
            }
            let v = vp_int(c.denom(), &p) - vp_int(c.numer(), &p);
            if v > 0 {
                k = k.max((v as u32).div_ceil(w));
            }
        }
        n *= p.pow(k);
    }
    n
}

/// Kraus's local conditions at 2 for `(c4, c6)` to come from an integral model.
fn kraus_at_2(c4: &BigInt, c6: &BigInt) -> bool {
    if c6.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
        return true;
    }
    let r = c6.mod_floor(&BigInt::from(32));
    c4.mod_floor(&BigInt::from(16)).is_zero() && (r.is_zero() || r == BigInt::from(8))
}

fn exact_div(n: &BigInt, d: i64) -> Result<BigInt> {
    let (q, r) = n.div_rem(&BigInt::from(d));
    if !r.is_zero() {
        return Err(Error::Inconsistent(format!("{n} is not divisible by {d}")));
    }
    Ok(q)
}

/// Integral model with `a1, a3 in {0, 1}` and `a2 in {-1, 0, 1}` for a
/// pair `(c4, c6)` satisfying Kraus's conditions.
fn model_from_c4c6(c4: &BigInt, c6: &BigInt) -> Result<Model> {
    let mut b2 = (-c6).mod_floor(&BigInt::from(12));
    if b2 > BigInt::from(6) {
        b2 -= 12;
    }
    let b4 = exact_div(&(&b2 * &b2 - c4), 24)?;
    let b6 = exact_div(
        &(-(&b2 * &b2 * &b2) + BigInt::from(36) * &b2 * &b4 - c6),
        216,
    )?;
    let a1 = b2.mod_floor(&BigInt::from(2));
    let a3 = b6.mod_floor(&BigInt::from(2));
    let a2 = exact_div(&(&b2 - &a1), 4)?;
    let a4 = exact_div(&(&b4 - &a1 * &a3), 2)?;
    let a6 = exact_div(&(&b6 - &a3), 4)?;
    Model::new([a1, a2, a3, a4, a6].map(Rational::from))
}

/// The unique `[u, r, s, t]` with the given `u` taking `from` to `to`.
fn transformation_between(from: &Model, to: &Model, u: Rational) -> Result<Transformation> {
    let [a1, a2, a3, _, _] = from.coefficients();
    let [b1, b2, b3, _, _] = to.coefficients();
    let two = Rational::from(2);
    let s = (&u * b1 - a1) / &two;
    let r = (&u * &u * b2 - a2 + &s * a1 + &s * &s) / Rational::from(3);
    let t = (&u * &u * &u * b3 - a3 - &r * a1) / &two;
    let map = Transformation::new(u, r, s, t)?;
    if from.apply(&map) != *to {
        return Err(Error::Inconsistent(format!(
            "no isomorphism {from} -> {to} with u = {}",
            map.u()
        )));
    }
    Ok(map)
}

/// A global minimal model of `m` with `a1, a3 in {0, 1}`, `a2 in {-1, 0, 1}`.
///
/// The model is first scaled to integrality by `[1/n, 0, 0, 0]`. Then, for
/// each prime with `p^12 | gcd(c6^2, disc)`, the largest admissible power is
/// divided out of `(c4, c6)`, backing off once at 2 or 3 when Kraus's
/// conditions would fail. The reduced model is rebuilt from the new
/// `(c4, c6)`, and the connecting `[u, r, s, t]` (with `u > 0`) is solved for exactly.
pub fn minimize(m: &Model) -> Result<MinimalModel> {
    let n = integralizing_scale(m.coefficients());
    let to_integral = Transformation::scaling(Rational::new(1, n).expect("n > 0"));
    let integral = m.apply(&to_integral);
    debug_assert!(integral.is_integral());

    let inv = integral.invariants();
    let c4 = inv.c4.to_integer().expect("integral model");
    let c6 = inv.c6.to_integer().expect("integral model");
    let delta = inv.delta.to_integer().expect("integral model");
    if delta.is_zero() {
        return Err(Error::Singular);
    }
    let g = (&c6 * &c6).gcd(&delta);

    let mut u = BigInt::one();
    for (p, e) in primes_with_power_dividing(&g, 12) {
        let mut k = e / 12;
        let pb = BigInt::from(p);
        if p == 2 {
            let c4r = &c4 >> (4 * k);
            let c6r = &c6 >> (6 * k);
            if !kraus_at_2(&c4r, &c6r) {
                k -= 1;
            }
        } else if p == 3 && !c6.is_zero() && vp_int(&c6, &pb) == 6 * i64::from(k) + 2 {
            k -= 1;
        }
        u *= pb.pow(k);
    }

    let c4m = exact_div_big(&c4, &u.pow(4))?;
    let c6m = exact_div_big(&c6, &u.pow(6))?;
    let minimal = model_from_c4c6(&c4m, &c6m)?;
    let step = transformation_between(&integral, &minimal, Rational::from(u))?;
    Ok(MinimalModel {
        minimal,
        map: to_integral.compose(&step),
    })
}

fn exact_div_big(n: &BigInt, d: &BigInt) -> Result<BigInt> {
    let (q, r) = n.div_rem(d);
    if !r.is_zero() {
        return Err(Error::Inconsistent(format!("{n} is not divisible by {d}")));
    }
    Ok(q)
}

/// Whether `m` is integral with minimal discriminant in its class.
pub fn is_minimal(m: &Model) -> Result<bool> {
    if !m.is_integral() {
        return Ok(false);
    }
    Ok(minimize(m)?.map.u().abs().is_one())
}

/// Twists the minimal `m` by `d`, minimizes the twist, and checks that the
/// scaling factor found by reduction is the tabulated `u~`.
pub fn minimal_model_of_twist(m: &Model, d: i64) -> Result<(MinimalModel, UTildeResult)> {
    let base = minimize(m)?.minimal;
    let utilde = compute_utilde(&base, d)?;
    let twisted = twist(&base, d)?;
    let reduced = minimize(&twisted)?;
    let found = reduced.map.u().abs();
    if found != utilde.utilde {
        return Err(Error::Inconsistent(format!(
            "case table gives u~ = {} but reduction of {twisted} needs |u| = {found} (labels {:?})",
            utilde.utilde,
            utilde.case_labels()
        )));
    }
    let ratio = twisted.discriminant() / reduced.minimal.discriminant();
    if ratio != utilde.utilde.pow(12) {
        return Err(Error::Inconsistent(format!(
            "discriminant ratio {ratio} differs from u~^12 for u~ = {}",
            utilde.utilde
        )));
    }
    Ok((reduced, utilde))
}

/// Machine-readable summary of a `u~` computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UTildeReport {
    pub curve: Model,
    pub d: i64,
    pub per_prime: Vec<LocalFactor>,
    pub utilde: Rational,
    /// Discriminant of the twist as produced by the twist formula.
    pub delta_twist: Rational,
    /// Discriminant of a minimal model of the twist.
    pub delta_min: Rational,
}

pub fn utilde_report(m: &Model, d: i64) -> Result<UTildeReport> {
    let base = minimize(m)?.minimal;
    let (reduced, result) = minimal_model_of_twist(&base, d)?;
    Ok(UTildeReport {
        curve: m.clone(),
        d,
        per_prime: result.per_prime,
        utilde: result.utilde,
        delta_twist: twist(&base, d)?.discriminant(),
        delta_min: reduced.minimal.discriminant(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1() -> Model {
        Model::from_ints([0, -1, 0, -6883, 222137]).unwrap()
    }
    fn e2() -> Model {
        Model::from_ints([1, 0, 1, -173, 879]).unwrap()
    }
    fn c27a1() -> Model {
        Model::from_ints([0, 0, 1, 0, -7]).unwrap()
    }

    fn same_invariants(a: &Model, b: &Model) -> bool {
        let (x, y) = (a.invariants(), b.invariants());
        x.c4 == y.c4 && x.c6 == y.c6 && x.delta == y.delta
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_v(&c27a1(), 3).unwrap(), Valuation::Finite(9));
        let m = Model::from_ints([0, 0, 0, 0, 1]).unwrap();
        assert_eq!(lambda_v(&m, 5).unwrap(), Valuation::Finite(0));
        assert_eq!(lambda_v(&e1(), 11).unwrap(), Valuation::Finite(0));
        assert!(lambda_v(&m, 1).is_err());
    }

    #[test]
    fn local_factor_examples() {
        assert_eq!(
            compute_up(&e1(), 5, 5).unwrap(),
            (Rational::from(5), CaseLabel::OddLargeLambda)
        );
        assert_eq!(
            compute_up(&e1(), 5, 2).unwrap(),
            (Rational::one(), CaseLabel::TwoD1)
        );
        assert_eq!(
            compute_up(&e2(), -7, 2).unwrap(),
            (Rational::one(), CaseLabel::TwoD1)
        );
        assert_eq!(
            compute_up(&e2(), -7, 7).unwrap(),
            (Rational::from(7), CaseLabel::OddLargeLambda)
        );
        assert_eq!(
            compute_up(&c27a1(), -3, 3).unwrap(),
            (Rational::from(3), CaseLabel::OddLargeLambda)
        );
        assert_eq!(
            compute_up(&e1(), 5, 11).unwrap(),
            (Rational::one(), CaseLabel::OddCoprime)
        );
        assert!(compute_up(&e1(), 5, 15).is_err());
        assert!(compute_up(&e1(), 20, 2).is_err());
    }

    #[test]
    fn utilde_examples() {
        assert_eq!(compute_utilde(&e1(), 5).unwrap().utilde, Rational::from(5));
        assert_eq!(compute_utilde(&e2(), -7).unwrap().utilde, Rational::from(7));
        let r = compute_utilde(&c27a1(), -3).unwrap();
        assert_eq!(r.utilde, Rational::from(3));
        assert_eq!(r.get(2).unwrap().case, CaseLabel::TwoD1);
        assert!(r.has_odd_prime_factor());
        assert_eq!(compute_utilde(&e1(), 1).unwrap().utilde, Rational::one());
    }

    #[test]
    fn prediction_examples() {
        // 1(b) at 5: v5(disc E) - 6
        let v5 = vp_unchecked(&e1().discriminant(), 5);
        assert_eq!(predict_twist_disc_valuation(&e1(), 5, 5).unwrap(), v5 - 6);
        let v7 = vp_unchecked(&e2().discriminant(), 7);
        assert_eq!(predict_twist_disc_valuation(&e2(), -7, 7).unwrap(), v7 - 6);
        let v3 = vp_unchecked(&e2().discriminant(), 3);
        assert_eq!(predict_twist_disc_valuation(&e2(), -7, 3).unwrap(), v3);
    }

    #[test]
    fn minimize_examples() {
        let r = minimize(&Model::from_ints([0, -5, 0, -172075, 27767125]).unwrap()).unwrap();
        assert!(same_invariants(
            &r.minimal,
            &Model::from_ints([0, 1, 0, -275, 1667]).unwrap()
        ));
        assert_eq!(r.map.u(), &Rational::from(5));
        let r = minimize(&Model::from_ints([1, -2, 1, -8453, -301583]).unwrap()).unwrap();
        assert!(same_invariants(
            &r.minimal,
            &Model::from_ints([1, 1, 0, -3, -4]).unwrap()
        ));
        assert_eq!(r.map.u(), &Rational::from(7));
        let r = minimize(&e2()).unwrap();
        assert_eq!(r.map.u().abs(), Rational::one());
        assert_eq!(r.minimal, e2());
    }

    #[test]
    fn minimize_rational_input() {
        // y^2 = x^3 + x/16 + 1/64 is [0,0,0,1,1] scaled by u = 2
        let m = Model::new([
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::new(1, 16).unwrap(),
            Rational::new(1, 64).unwrap(),
        ])
        .unwrap();
        let r = minimize(&m).unwrap();
        assert!(r.minimal.is_integral());
        assert_eq!(m.apply(&r.map), r.minimal);
        assert!(same_invariants(
            &r.minimal,
            &Model::from_ints([0, 0, 0, 1, 1]).unwrap()
        ));
        assert_eq!(r.map.u(), &Rational::new(1, 2).unwrap());
    }

    #[test]
    fn minimize_short_model_with_sixth_powers() {
        // y^2 = x^3 - 6^6 reduces to y^2 = x^3 - 1, whose discriminant -2^4 3^3
        // is too small at both primes to go further
        let m = Model::from_ints([0, 0, 0, 0, -46656]).unwrap();
        let r = minimize(&m).unwrap();
        assert!(is_minimal(&r.minimal).unwrap());
        assert_eq!(m.apply(&r.map), r.minimal);
        assert_eq!(r.minimal.discriminant().abs(), Rational::from(432));
    }

    #[test]
    fn twist_cross_check() {
        let (red, u) = minimal_model_of_twist(&e1(), 5).unwrap();
        assert_eq!(u.utilde, Rational::from(5));
        assert_eq!(
            twist(&e1(), 5).unwrap().discriminant() / red.minimal.discriminant(),
            Rational::from(5).pow(12)
        );
        let (_, u) = minimal_model_of_twist(&e2(), -7).unwrap();
        assert_eq!(u.utilde, Rational::from(7));
    }

    #[test]
    fn report_serialization() {
        let rep = utilde_report(&e2(), -7).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["utilde"], "7");
        assert_eq!(v["d"], -7);
        assert_eq!(v["per_prime"][0]["case"], "2a");
        assert_eq!(v["per_prime"][1]["case"], "1b");
        assert_eq!(v["per_prime"][1]["p"], 7);
        let back: UTildeReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, rep);
    }
}
