//! Independent oracles shared by the integration tests: seeded random
//! curves, double-precision cubic roots, and period integrals by adaptive
//! Gauss-Kronrod quadrature. Nothing here calls the library's period code.

#![allow(dead_code, clippy::excessive_precision)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistperiod::arith::square_free_check;
use twistperiod::{minimize, Model};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonsingular integral model with `|a_i| <= bound`.
pub fn random_model(rng: &mut impl Rng, bound: i64) -> Model {
    loop {
        let a = [(); 5].map(|_| rng.gen_range(-bound..=bound));
        if let Ok(m) = Model::from_ints(a) {
            return m;
        }
    }
}

/// The global minimal model of a random integral model.
pub fn random_minimal_model(rng: &mut impl Rng, bound: i64) -> Model {
    minimize(&random_model(rng, bound))
        .expect("integral models minimize")
        .minimal
}

/// A square-free `d` with `0 < |d| <= bound`.
pub fn random_square_free(rng: &mut impl Rng, bound: i64) -> i64 {
    loop {
        let d = rng.gen_range(-bound..=bound);
        if d != 0 && square_free_check(d).unwrap() {
            return d;
        }
    }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// `(b2, b4, b6)` in double precision.
pub fn b_invariants(m: &Model) -> (f64, f64, f64) {
    let inv = m.invariants();
    (inv.b2.to_f64(), inv.b4.to_f64(), inv.b6.to_f64())
}

#[derive(Clone, Copy, Debug)]
pub enum Roots {
    /// e1 > e2 > e3
    Three(f64, f64, f64),
    /// e1 real; the others are re +- i im with im > 0
    One(f64, f64, f64),
}

/// Roots of `4x^3 + b2 x^2 + 2 b4 x + b6` by the trigonometric / Cardano
/// formulas, polished with Newton steps.
pub fn cubic_roots(b2: f64, b4: f64, b6: f64) -> Roots {
    // monic: x^3 + a x^2 + b x + c
    let (a, b, c) = (b2 / 4.0, b4 / 2.0, b6 / 4.0);
    let f = |x: f64| ((x + a) * x + b) * x + c;
    let df = |x: f64| (3.0 * x + 2.0 * a) * x + b;
    let polish = |mut x: f64| {
        for _ in 0..6 {
            let d = df(x);
            if d == 0.0 {
                break;
            }
            let step = f(x) / d;
            if !step.is_finite() {
                break;
            }
            x -= step;
        }
        x
    };
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;
    let disc = -(4.0 * p * p * p + 27.0 * q * q);
    if disc > 0.0 {
        let r = 2.0 * (-p / 3.0).sqrt();
        let phi = ((3.0 * q / (p * r)).clamp(-1.0, 1.0)).acos() / 3.0;
        let mut e: Vec<f64> = (0..3)
            .map(|k| polish(r * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift))
            .collect();
        e.sort_by(|x, y| y.partial_cmp(x).unwrap());
        Roots::Three(e[0], e[1], e[2])
    } else {
        let s = (q * q / 4.0 + p * p * p / 27.0).sqrt();
        let t = (-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt();
        let e1 = polish(t + shift);
        // x^3 + a x^2 + b x + c = (x - e1)(x^2 + beta x + gamma)
        let beta = a + e1;
        let gamma = b + beta * e1;
        let re = -beta / 2.0;
        let im = (gamma - re * re).max(0.0).sqrt();
        Roots::One(e1, re, im)
    }
}

// Gauss-Kronrod 7-15 on [-1, 1]
const XK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XK[i];
        let s = f(c - x) + f(c + x);
        k += WK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss-Kronrod quadrature of a smooth integrand on `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn go(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = gk15(f, a, b);
        if err <= tol * v.abs().max(1e-300) || depth >= 48 {
            return v;
        }
        let m = 0.5 * (a + b);
        go(f, a, m, tol, depth + 1) + go(f, m, b, tol, depth + 1)
    }
    go(&f, a, b, tol, 0)
}

/// `int_0^inf g(t) dt` for `g = O(t^-2)`, split at 1 with `t = 1/v` on the tail.
fn half_line(g: impl Fn(f64) -> f64) -> f64 {
    let head = integrate(&g, 0.0, 1.0, 1e-14);
    let tail = integrate(
        |v| if v == 0.0 { 0.0 } else { g(1.0 / v) / (v * v) },
        0.0,
        1.0,
        1e-14,
    );
    head + tail
}

/// Periods of one model from quadrature.
#[derive(Clone, Copy, Debug)]
pub struct QuadPeriods {
    /// Least positive real period `2 int_{e1}^inf dx / sqrt(f)`.
    pub omega1: f64,
    /// Same period over the bounded real component, when there is one.
    pub egg: Option<f64>,
    /// Integral over the anti-invariant cycle: `2 int_{e2}^{e1} dx/sqrt(-f)` for
    /// three real roots and `2 int_{-inf}^{e1} dx/sqrt(-f)` for one.
    pub omega_minus: f64,
    pub c_inf: u32,
}

pub fn quadrature_periods(m: &Model) -> QuadPeriods {
    let (b2, b4, b6) = b_invariants(m);
    match cubic_roots(b2, b4, b6) {
        Roots::Three(e1, e2, e3) => {
            // x = e1 + t^2 on the unbounded component
            let (a, b) = (e1 - e2, e1 - e3);
            let omega1 = 2.0 * half_line(|t| 1.0 / ((t * t + a) * (t * t + b)).sqrt());
            // x = e3 + (e2 - e3) sin^2 on the egg, x = e2 + (e1 - e2) sin^2 between
            let half_pi = std::f64::consts::FRAC_PI_2;
            let egg = 2.0
                * integrate(
                    |th| 1.0 / (e1 - e3 - (e2 - e3) * th.sin().powi(2)).sqrt(),
                    0.0,
                    half_pi,
                    1e-14,
                );
            let minus = 2.0
                * integrate(
                    |th| 1.0 / (e2 - e3 + (e1 - e2) * th.sin().powi(2)).sqrt(),
                    0.0,
                    half_pi,
                    1e-14,
                );
            QuadPeriods {
                omega1,
                egg: Some(egg),
                omega_minus: minus,
                c_inf: 2,
            }
        }
        Roots::One(e1, re, im) => {
            let a = e1 - re;
            // x = e1 + t^2: |x - e2|^2 = (t^2 + a)^2 + im^2
            let omega1 = 2.0 * half_line(|t| 1.0 / ((t * t + a).powi(2) + im * im).sqrt());
            // x = e1 - t^2: |x - e2|^2 = (a - t^2)^2 + im^2
            let minus = 2.0 * half_line(|t| 1.0 / ((a - t * t).powi(2) + im * im).sqrt());
            QuadPeriods {
                omega1,
                egg: None,
                omega_minus: minus,
                c_inf: 1,
            }
        }
    }
}

/// Checks one `(minimal curve, d)` pair against the reduction oracle:
/// `u~^12 = disc(E^d)/disc(E^d_min)`, the predicted discriminant valuation at
/// every `p | 2d`, the coprime-`d` rule (u~ a power of 2, and 1 when d = 1 mod 4), and `2 u~` integral.
/// Returns the case labels seen.
pub fn check_case_table(m: &Model, d: i64) -> Result<Vec<twistperiod::CaseLabel>, String> {
    use num_integer::Integer;
    use twistperiod::arith::{odd_prime_divisors, vp};
    use twistperiod::{compute_utilde, predict_twist_disc_valuation, twist, Rational};

    let ctx = |what: &str| format!("{m} d={d}: {what}");
    let u = compute_utilde(m, d).map_err(|e| ctx(&e.to_string()))?;
    let twisted = twist(m, d).map_err(|e| ctx(&e.to_string()))?;
    let reduced = minimize(&twisted).map_err(|e| ctx(&e.to_string()))?;
    if reduced.map.u().abs() != u.utilde {
        return Err(ctx(&format!(
            "table u~ = {} but reduction needs {}",
            u.utilde,
            reduced.map.u()
        )));
    }
    let ratio = twisted.discriminant() / reduced.minimal.discriminant();
    if ratio != u.utilde.pow(12) {
        return Err(ctx(&format!("disc ratio {ratio} != u~^12")));
    }
    let delta_min = reduced.minimal.discriminant();
    for p in std::iter::once(2).chain(odd_prime_divisors(d).unwrap()) {
        let predicted = predict_twist_disc_valuation(m, d, p).map_err(|e| ctx(&e.to_string()))?;
        let actual = vp(&delta_min, p).unwrap();
        if predicted != actual {
            return Err(ctx(&format!(
                "at p={p} predicted v(disc) {predicted}, reduction gives {actual}"
            )));
        }
    }
    let twice = &u.utilde * Rational::from(2);
    if !twice.is_integer() {
        return Err(ctx(&format!("2u~ = {twice} is not integral")));
    }
    let delta = m
        .discriminant()
        .to_integer()
        .expect("minimal models are integral");
    if delta.gcd(&num_bigint::BigInt::from(d)) == num_bigint::BigInt::from(1) {
        let mut n = u.utilde.clone();
        while n.numer() % 2 == num_bigint::BigInt::from(0) {
            n = n / Rational::from(2);
        }
        while n.denom() % 2 == num_bigint::BigInt::from(0) {
            n = n * Rational::from(2);
        }
        if n != Rational::one() {
            return Err(ctx(&format!(
                "coprime d but u~ = {} is not a power of 2",
                u.utilde
            )));
        }
        if d.rem_euclid(4) == 1 && u.utilde != Rational::one() {
            return Err(ctx(&format!("coprime d = 1 mod 4 but u~ = {}", u.utilde)));
        }
    }
    Ok(u.case_labels())
}
