//! Bessel functions of complex order and positive real argument by the
//! ascending series. The series is summed in double-double: for `J_{iρ}(x)`
//! with `ρ ≈ x` the terms exceed the result by up to `e^{x/4}`.

use std::f64::consts::PI;

use super::gamma::log_gamma_complex;
use crate::dd::{CDd, Dd};
use crate::error::{Error, Result};
use crate::logc::LogComplex;
use crate::ComplexVal;

const MAX_TERMS: usize = 20_000;

/// `Σ_n (σ x²/4)ⁿ / (n! (ν+1)_n)` in double-double, with `σ = −1` for J and
/// `+1` for I.
pub(crate) fn ascending_sum(nu: ComplexVal, x: f64, sign: f64) -> Result<ComplexVal> {
    let q = Dd::prod(x, x) / Dd::from_f64(4.0);
    let q = if sign < 0.0 { -q } else { q };
    let qn = q.to_f64().abs();
    let mut term = CDd::from_c64(ComplexVal::new(1.0, 0.0));
    let mut sum = term;
    let nu1 = CDd::from_c64(nu + 1.0);
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        // (ν + 1 + n)(n + 1)
        let den = CDd::new(nu1.re + Dd::from_f64(nf), nu1.im) * CDd::from_c64(ComplexVal::new(nf + 1.0, 0.0));
        term = term * CDd::new(q, Dd::ZERO) / den;
        sum = sum + term;
        let m = nf + 2.0;
        let lower = m + nu.re;
        if lower > 0.0 {
            let bound = qn / (m * lower);
            if bound < 0.5 {
                let tail = term.norm() * bound / (1.0 - bound);
                if tail <= 1e-18 * sum.norm() || term.norm() == 0.0 {
                    return Ok(sum.to_c64());
                }
            }
        }
    }
    Err(Error::NoConvergence { what: "bessel ascending series", terms: MAX_TERMS, tail_bound: f64::NAN })
}

fn is_negative_int(nu: ComplexVal) -> bool {
    nu.im == 0.0 && nu.re < 0.0 && nu.re == nu.re.round()
}

/// `J_ν(x)` in log form. Handles the orders and arguments the linear
/// variants share.
pub fn bessel_j_log(nu: ComplexVal, x: f64) -> Result<LogComplex> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("bessel_j: argument {x} must be a nonnegative real")));
    }
    if is_negative_int(nu) {
        // J_{−n} = (−1)ⁿ J_n
        let n = -nu.re as i64;
        let j = bessel_j_log(-nu, x)?;
        return Ok(if n % 2 == 0 { j } else { -j });
    }
    if x == 0.0 {
        if nu == ComplexVal::new(0.0, 0.0) {
            return Ok(LogComplex::ONE);
        }
        if nu.re > 0.0 {
            return Ok(LogComplex::ZERO);
        }
        return Err(Error::domain("bessel_j: x = 0 needs Re(order) > 0 or order 0"));
    }
    let pref = LogComplex::exp(nu * (x / 2.0).ln()) / log_gamma_complex(nu + 1.0)?;
    Ok(pref.scale(ascending_sum(nu, x, -1.0)?))
}

/// `J_ν(x)`; fails with an overflow error when the value is not
/// representable (use [`bessel_j_scaled`] for large imaginary orders).
pub fn bessel_j(nu: ComplexVal, x: f64) -> Result<ComplexVal> {
    bessel_j_log(nu, x)?.to_complex().map_err(|_| {
        Error::Overflow(format!(
            "J_{{{nu}}}({x}) overflows; use bessel_j_scaled for large imaginary order"
        ))
    })
}

/// `e^{−πρ/2} J_{iρ}(x)`, finite for large ρ.
pub fn bessel_j_scaled(rho: f64, x: f64) -> Result<ComplexVal> {
    let j = bessel_j_log(ComplexVal::new(0.0, rho), x)?;
    (j * LogComplex::new(-PI * rho / 2.0, 0.0)).to_complex()
}

/// `I_ν(x)` in log form (ascending series, no cancellation control beyond
/// double-double).
pub(crate) fn bessel_i_log(nu: ComplexVal, x: f64) -> Result<LogComplex> {
    if !(x > 0.0) {
        return Err(Error::domain("bessel_i: argument must be positive"));
    }
    let pref = LogComplex::exp(nu * (x / 2.0).ln()) / log_gamma_complex(nu + 1.0)?;
    Ok(pref.scale(ascending_sum(nu, x, 1.0)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, panels_by_width, QuadOptions};
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> ComplexVal {
        ComplexVal::new(re, im)
    }

    #[test]
    fn integer_orders() {
        assert_eq!(bessel_j(c(0.0, 0.0), 0.0).unwrap(), c(1.0, 0.0));
        assert_relative_eq!(bessel_j(c(1.0, 0.0), 1.0).unwrap().re, 0.440_050_585_744_933_5, max_relative = 1e-14);
        assert_relative_eq!(bessel_j(c(0.0, 0.0), 1.0).unwrap().re, 0.765_197_686_557_966_6, max_relative = 1e-14);
        let jm = bessel_j(c(-3.0, 0.0), 2.5).unwrap();
        let jp = bessel_j(c(3.0, 0.0), 2.5).unwrap();
        assert_relative_eq!(jm.re, -jp.re, max_relative = 1e-14);
    }

    #[test]
    fn imaginary_order_matches_schlafli_quadrature() {
        // J_ν(x) = (1/π)∫₀^π cos(νθ − x sinθ) dθ − (sin νπ/π)∫₀^∞ e^{−x sinh t − νt} dt
        let nu = c(0.0, 1.0);
        let x = 1.0;
        let o = QuadOptions::default();
        let a = integrate(|t| ((nu * t) - x * t.sin()).cos(), &[0.0, PI], &o).unwrap().value;
        let pts = panels_by_width(0.0, 40.0, |_| 1.0, 100);
        let b = integrate(|t| (-(nu * t) - x * t.sinh()).exp(), &pts, &o).unwrap().value;
        let expect = a / PI - (nu * PI).sin() / PI * b;
        let got = bessel_j(nu, x).unwrap();
        assert!((got - expect).norm() < 1e-12 * expect.norm(), "{got} vs {expect}");
    }

    #[test]
    fn scaled_is_finite_for_large_order() {
        assert!(bessel_j(c(0.0, 500.0), 10.0).is_err());
        let s = bessel_j_scaled(500.0, 10.0).unwrap();
        assert!(s.norm().is_finite() && s.norm() > 0.0);
    }

    #[test]
    fn wronskian_like_identity_for_imaginary_order() {
        // J_{iρ} J'_{−iρ} − J'_{iρ} J_{−iρ} = −2 sin(iρπ)/(πx), checked through
        // J' = (J_{ν−1} − J_{ν+1})/2.
        let rho = 3.0;
        let x = 40.0;
        let j = |nu: ComplexVal| bessel_j(nu, x).unwrap();
        let dj = |nu: ComplexVal| (j(nu - 1.0) - j(nu + 1.0)) / 2.0;
        let (a, b) = (c(0.0, rho), c(0.0, -rho));
        let w = j(a) * dj(b) - dj(a) * j(b);
        let expect = -2.0 * (a * PI).sin() / (PI * x);
        assert!((w - expect).norm() < 1e-10 * expect.norm());
    }
}
