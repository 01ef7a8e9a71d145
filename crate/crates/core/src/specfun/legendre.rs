//! Legendre functions `P^μ_ν` of complex degree and order.
//!
//! * On `(−1, 1)` (Ferrers branch): for `x > ½` the series in `(1−x)/2`, otherwise
//!   the even/odd split in `x²`,
//!   `P^μ_ν(x) = 2^μ √π (1−x²)^{−μ/2} [F_e/(Γ((1−μ−ν)/2) Γ(1+(ν−μ)/2))
//!   − 2x F_o/(Γ((1+ν−μ)/2) Γ(−(ν+μ)/2))]`.
//! * On `(1, ∞)`: the integral
//!   `P^μ_ν(z) = √(2/π) Γ(½−μ)/(Γ(−ν−μ) Γ(1+ν−μ)) (z²−1)^{−μ/2}
//!   ∫₀^∞ (z+cosh t)^{μ−½} cosh((ν+½)t) dt`,
//!   or the regularized ₂F₁ in `(1−z)/2` near `z = 1`.

use std::f64::consts::PI;

use super::gamma::{log_gamma_complex, rgamma_log};
use super::hyper::{hyp2f1, hyp2f1_regularized, HYP2F1_Z_MAX};
use crate::error::{Error, Result};
use crate::logc::LogComplex;
use crate::quad::{integrate, panels_by_width, QuadOptions};
use crate::ComplexVal;

fn c(re: f64, im: f64) -> ComplexVal {
    ComplexVal::new(re, im)
}

/// Above this `x` the Ferrers function is summed in `(1−x)/2`, which avoids
/// the cancellation between the even and odd parts of the split.
const NEAR_ONE_SWITCH: f64 = 0.5;

/// Ferrers function `P^μ_ν(x)`, `|x| < 1`, in log form.
pub fn legendre_p_interval_log(mu: ComplexVal, nu: ComplexVal, x: f64) -> Result<LogComplex> {
    if !(x.abs() < 1.0) {
        return Err(Error::domain(format!("legendre_p_interval: |x| = {} must be < 1", x.abs())));
    }
    if x > NEAR_ONE_SWITCH {
        return interval_near_one(mu, nu, x);
    }
    let x2 = c(x * x, 0.0);
    if x2.re > HYP2F1_Z_MAX {
        return Err(Error::domain(format!(
            "legendre_p_interval: x² = {} exceeds the series cap {HYP2F1_Z_MAX}",
            x2.re
        )));
    }
    let half = 0.5;
    let even = rgamma_log((1.0 - mu - nu) * half)? * rgamma_log(1.0 + (nu - mu) * half)?;
    let odd = rgamma_log((1.0 + nu - mu) * half)? * rgamma_log(-(nu + mu) * half)?;
    let mut bracket = LogComplex::ZERO;
    if !even.is_zero() {
        let f = hyp2f1(-(mu + nu) * half, (1.0 - mu + nu) * half, c(0.5, 0.0), x2)?;
        bracket = bracket.add(&even.scale(f.value));
    }
    if !odd.is_zero() && x != 0.0 {
        let f = hyp2f1((1.0 - mu - nu) * half, 1.0 + (nu - mu) * half, c(1.5, 0.0), x2)?;
        bracket = bracket.sub(&odd.scale(f.value * (2.0 * x)));
    }
    let pref = LogComplex::exp(mu * 2f64.ln() + 0.5 * PI.ln()) * LogComplex::from_real(1.0 - x * x).powc(-mu * half);
    Ok(pref * bracket)
}

/// `((1+x)/(1−x))^{μ/2} ₂F₁(−ν, ν+1; 1−μ; (1−x)/2) / Γ(1−μ)`.
fn interval_near_one(mu: ComplexVal, nu: ComplexVal, x: f64) -> Result<LogComplex> {
    let w = c((1.0 - x) / 2.0, 0.0);
    let pref = LogComplex::from_real((1.0 + x) / (1.0 - x)).powc(mu * 0.5);
    let cc = 1.0 - mu;
    let pole = cc.im == 0.0 && cc.re <= 0.0 && cc.re.fract() == 0.0;
    if pole {
        return Ok(pref.scale(hyp2f1_regularized(-nu, nu + 1.0, cc, w)?.value));
    }
    let f = hyp2f1(-nu, nu + 1.0, cc, w)?;
    Ok(pref * rgamma_log(cc)?.scale(f.value))
}

pub fn legendre_p_interval(mu: ComplexVal, nu: ComplexVal, x: f64) -> Result<ComplexVal> {
    legendre_p_interval_log(mu, nu, x)?.to_complex()
}

/// Whether the integral representation converges: the integrand grows like
/// `e^{(Re μ − ½ + |Re(ν+½)|) t}`.
pub fn ray_integral_converges(mu: ComplexVal, nu: ComplexVal) -> bool {
    mu.re - 0.5 + (nu.re + 0.5).abs() < 0.0
}

/// `P^μ_ν(z)`, `z > 1`, choosing the integral where it converges and the
/// hypergeometric series otherwise.
pub fn legendre_p_ray(mu: ComplexVal, nu: ComplexVal, z: f64) -> Result<ComplexVal> {
    legendre_p_ray_log(mu, nu, z)?.to_complex()
}

pub fn legendre_p_ray_log(mu: ComplexVal, nu: ComplexVal, z: f64) -> Result<LogComplex> {
    if !(z > 1.0) || !z.is_finite() {
        return Err(Error::domain(format!("legendre_p_ray: z = {z} must exceed 1")));
    }
    if ray_integral_converges(mu, nu) {
        return legendre_p_ray_integral(mu, nu, z);
    }
    if (1.0 - z).abs() / 2.0 <= HYP2F1_Z_MAX {
        return legendre_p_ray_series(mu, nu, z);
    }
    Err(Error::domain(format!(
        "legendre_p_ray: integral needs Re μ − ½ + |Re(ν+½)| < 0 (got {}), and the series needs z ≤ {}",
        mu.re - 0.5 + (nu.re + 0.5).abs(),
        1.0 + 2.0 * HYP2F1_Z_MAX
    )))
}

/// `((z+1)/(z−1))^{μ/2} ₂F̃₁(−ν, ν+1; 1−μ; (1−z)/2)`.
pub fn legendre_p_ray_series(mu: ComplexVal, nu: ComplexVal, z: f64) -> Result<LogComplex> {
    if !(z > 1.0) {
        return Err(Error::domain(format!("legendre_p_ray: z = {z} must exceed 1")));
    }
    let w = c((1.0 - z) / 2.0, 0.0);
    let f = hyp2f1_regularized(-nu, nu + 1.0, 1.0 - mu, w)?;
    let pref = LogComplex::from_real((z + 1.0) / (z - 1.0)).powc(mu * 0.5);
    Ok(pref.scale(f.value))
}

/// The integral representation, by adaptive quadrature with panels sized to
/// the local oscillation of the integrand.
pub fn legendre_p_ray_integral(mu: ComplexVal, nu: ComplexVal, z: f64) -> Result<LogComplex> {
    if !(z > 1.0) {
        return Err(Error::domain(format!("legendre_p_ray: z = {z} must exceed 1")));
    }
    if !ray_integral_converges(mu, nu) {
        return Err(Error::domain(format!(
            "legendre_p_ray: integral diverges, Re μ − ½ + |Re(ν+½)| = {} ≥ 0",
            mu.re - 0.5 + (nu.re + 0.5).abs()
        )));
    }
    let gam = rgamma_log(-nu - mu)? * rgamma_log(1.0 + nu - mu)?;
    if gam.is_zero() {
        return Ok(LogComplex::ZERO);
    }
    let pref = LogComplex::new(0.5 * (2.0 / PI).ln(), 0.0)
        * log_gamma_complex(0.5 - mu)?
        * gam
        * LogComplex::from_real(z * z - 1.0).powc(-mu * 0.5);

    let e = mu - 0.5;
    let w = nu + 0.5;
    let decay = -(mu.re - 0.5 + w.re.abs());
    let t_max = 40.0 / decay + 2.0;
    let omega = |t: f64| mu.im.abs() * t.sinh() / (z + t.cosh()) + w.im.abs();
    let pts = panels_by_width(0.0, t_max, |t| (PI / omega(t).max(1e-3)).min(1.0), 200_000);
    // Integrand without the dominant e^{(μ−½)t}·e^{|Re w|t} growth written out,
    // so nothing overflows before the decay sets in.
    let f = |t: f64| {
        let base = (e * (z + t.cosh()).ln()).exp();
        base * (w * t).cosh()
    };
    let opts = QuadOptions { abs_tol: 0.0, rel_tol: 1e-12, max_panels: 400_000 };
    let r = integrate(f, &pts, &opts)?;
    Ok(pref.scale(r.value))
}
