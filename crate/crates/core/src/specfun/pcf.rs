//! Parabolic cylinder function `D_ν(z)` from its two-term Kummer form
//! `D_ν(z) = 2^{ν/2} √π e^{−z²/4} [₁F₁(−ν/2; ½; z²/2)/Γ((1−ν)/2)
//! − z√2 ₁F₁((1−ν)/2; 3/2; z²/2)/Γ(−ν/2)]`.

use std::f64::consts::{PI, SQRT_2};

use super::gamma::rgamma_log;
use super::hyper::hyp1f1;
use crate::error::Result;
use crate::logc::LogComplex;
use crate::ComplexVal;

pub fn pcf_d(nu: ComplexVal, z: ComplexVal) -> Result<ComplexVal> {
    let half = ComplexVal::new(0.5, 0.0);
    let w = z * z / 2.0;
    let g1 = rgamma_log((1.0 - nu) / 2.0)?;
    let g2 = rgamma_log(-nu / 2.0)?;
    let mut bracket = LogComplex::ZERO;
    if !g1.is_zero() {
        bracket = bracket.add(&g1.scale(hyp1f1(-nu / 2.0, half, w)?.value));
    }
    if !g2.is_zero() && z != ComplexVal::new(0.0, 0.0) {
        let f = hyp1f1((1.0 - nu) / 2.0, ComplexVal::new(1.5, 0.0), w)?.value;
        bracket = bracket.sub(&g2.scale(f * z * SQRT_2));
    }
    let pref = LogComplex::exp(nu / 2.0 * 2f64.ln() + 0.5 * PI.ln() - z * z / 4.0);
    (pref * bracket).to_complex()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> ComplexVal {
        ComplexVal::new(re, im)
    }

    #[test]
    fn order_zero_is_gaussian() {
        let z = c(1.7, 0.0);
        let d = pcf_d(c(0.0, 0.0), z).unwrap();
        assert!((d - (-z * z / 4.0).exp()).norm() < 1e-12);
        assert!((d.re - 0.485_536_895_154_079).abs() < 1e-12);
    }

    #[test]
    fn order_one_by_recurrence() {
        // D_{ν+1} = z D_ν − ν D_{ν−1}, with ν = 0: D_1 = z D_0.
        let z = c(1.0, 0.0);
        let d1 = pcf_d(c(1.0, 0.0), z).unwrap();
        let d0 = pcf_d(c(0.0, 0.0), z).unwrap();
        assert!((d1 - z * d0).norm() < 1e-13);
        assert!((d1 - z * (-z * z / 4.0).exp()).norm() < 1e-13);
    }

    #[test]
    fn recurrence_for_complex_order() {
        let (nu, z) = (c(0.3, 0.5), c(0.8, -0.4));
        let lhs = pcf_d(nu + 1.0, z).unwrap();
        let rhs = z * pcf_d(nu, z).unwrap() - nu * pcf_d(nu - 1.0, z).unwrap();
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm().max(1.0));
    }

    #[test]
    fn weber_equation_residual() {
        let nu = c(0.3, 0.5);
        let z0 = 0.8;
        let h = 1e-3;
        let f = |t: f64| pcf_d(nu, c(t, 0.0)).unwrap();
        let d2 = (-f(z0 - 2.0 * h) + 16.0 * f(z0 - h) - 30.0 * f(z0) + 16.0 * f(z0 + h) - f(z0 + 2.0 * h)) / (12.0 * h * h);
        let res = d2 + (nu + 0.5 - z0 * z0 / 4.0) * f(z0);
        assert!(res.norm() <= 1e-6 * f(z0).norm());
    }

    proptest! {
        #[test]
        fn conjugation(nr in -2.0..2.0f64, ni in -2.0..2.0f64, zr in -3.0..3.0f64, zi in -3.0..3.0f64) {
            let (nu, z) = (c(nr, ni), c(zr, zi));
            let a = pcf_d(nu, z).unwrap();
            let b = pcf_d(nu.conj(), z.conj()).unwrap();
            prop_assert!((a.conj() - b).norm() <= 1e-11 * a.norm().max(1.0));
        }
    }
}
