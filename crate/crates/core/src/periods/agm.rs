use crate::error::{Error, Result};

use super::real::{Complex, Real};

/// Arithmetic-geometric mean with the "right" square root at every step,
/// i.e. the one with `|a' - b'| <= |a' + b'|`.
pub fn agm(a: &Complex, b: &Complex, prec: usize) -> Result<Complex> {
    let tol = Real::pow2(-(prec as i32) + 4, prec);
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..(prec + 64) {
        let diff = (&a - &b).abs();
        let size = a.abs().max(&b.abs());
        if size.is_zero() {
            return Err(Error::Precision("AGM of zero".into()));
        }
        if diff <= &size * &tol {
            return Ok(a);
        }
        let next_a = (&a + &b).scale(&Real::from_f64(0.5, prec));
        let mut next_b = (&a * &b).sqrt();
        if (&next_a - &next_b).abs() > (&next_a + &next_b).abs() {
            next_b = -&next_b;
        }
        a = next_a;
        b = next_b;
    }
    Err(Error::Precision(
        "AGM did not converge within the iteration budget".into(),
    ))
}

/// Real AGM of two positive reals.
pub fn agm_real(a: &Real, b: &Real, prec: usize) -> Result<Real> {
    Ok(agm(&Complex::real(a.clone()), &Complex::real(b.clone()), prec)?.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_constant() {
        // 1 / agm(1, sqrt 2) = 0.8346268416740731862814297...
        let p = 192;
        let g = agm_real(&Real::from_i64(1, p), &Real::from_i64(2, p).sqrt(), p).unwrap();
        let inv = Real::from_i64(1, p) / g;
        assert_eq!(inv.to_decimal_string(25), "0.8346268416740731862814297");
    }

    #[test]
    fn conjugate_pair_gives_real_mean() {
        let p = 192;
        let z = Complex::new(Real::from_i64(2, p), Real::from_i64(3, p));
        let m = agm(&z, &z.conj(), p).unwrap();
        assert!(m.im.abs().to_f64() < 1e-50);
        // agm(z, conj z) = agm(Re z, |z|)
        let r = agm_real(&Real::from_i64(2, p), &Real::from_i64(13, p).sqrt(), p).unwrap();
        assert!((&m.re - &r).abs().to_f64() < 1e-50);
    }
}
