//! Macdonald functions `K_{iρ}(x)` of imaginary order.
//!
//! The primary path integrates `∫₀^∞ e^{−x cosh t} cos(ρt) dt` after moving
//! the contour to `Im t = θ`. On the real axis the integral cancels down to
//! `e^{−πρ/2}` of its integrand scale; on the shifted line the integrand
//! already has the magnitude of the answer:
//!
//! `e^{πρ/2} K_{iρ}(x) = e^{ρ(π/2−θ)} ∫₀^∞ e^{−x cosθ cosh t} cos(ρt − x sinθ sinh t) dt`.
//!
//! A second, independent path (ascending series for small `x`, ODE
//! integration from the large-`x` expansion otherwise) is kept for
//! cross-checking.

use std::f64::consts::{FRAC_PI_2, PI};

use super::bessel::bessel_i_log;
use crate::error::{Error, Result};
use crate::logc::LogComplex;
use crate::quad::{integrate, panels_by_width, QuadOptions};
use crate::ComplexVal;

/// Largest order handled by quadrature.
pub const RHO_QUAD_CAP: f64 = 300.0;

fn check_args(rho: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("macdonald_k: x = {x} must be positive")));
    }
    if !rho.is_finite() {
        return Err(Error::NonFinite("macdonald_k order".into()));
    }
    Ok(rho.abs())
}

/// `e^{πρ/2} K_{iρ}(x)` by shifted-contour quadrature.
pub fn macdonald_k_scaled(rho: f64, x: f64) -> Result<f64> {
    let rho = check_args(rho, x)?;
    if rho > RHO_QUAD_CAP {
        return Err(Error::domain(format!(
            "macdonald_k: ρ = {rho} exceeds the quadrature cap {RHO_QUAD_CAP}; use asym_macdonald_k"
        )));
    }
    // Keep cos θ ≳ 1/ρ so the prefactor e^{ρ(π/2−θ)} stays O(1) above the
    // turning point and the integrand still decays.
    let delta_min = 1.0 / rho.max(1.0);
    let theta = if rho < x { (rho / x).asin() } else { FRAC_PI_2 };
    let theta = theta.min(FRAC_PI_2 - delta_min);
    let (st, ct) = theta.sin_cos();
    let decay = x * ct;
    let t_max = (45.0 / decay).max(1.0).acosh() + 1.0;
    let omega = |t: f64| (rho - x * st * t.cosh()).abs();
    let pts = panels_by_width(0.0, t_max, |t| (PI / omega(t).max(1e-3)).min(1.0), 50_000);
    let opts = QuadOptions { abs_tol: 0.0, rel_tol: 1e-13, max_panels: 100_000 };
    let f = |t: f64| {
        let v = (-decay * t.cosh()).exp() * (rho * t - x * st * t.sinh()).cos();
        ComplexVal::new(v, 0.0)
    };
    let r = integrate(f, &pts, &opts).or_else(|_| {
        let loose = QuadOptions { rel_tol: 1e-10, ..opts };
        integrate(f, &pts, &loose)
    })?;
    Ok((rho * (FRAC_PI_2 - theta)).exp() * r.value.re)
}

/// `K_{iρ}(x)`; real by construction and even in ρ.
pub fn macdonald_k(rho: f64, x: f64) -> Result<f64> {
    let s = macdonald_k_scaled(rho, x)?;
    Ok(s * (-PI * rho.abs() / 2.0).exp())
}

/// Second route to `e^{πρ/2} K_{iρ}(x)`, independent of the quadrature:
/// `K = −π Im I_{iρ}(x) / sinh πρ` for small `x`, otherwise integration of
/// the Bessel equation inward from the large-`x` expansion.
pub fn macdonald_k_scaled_continuation(rho: f64, x: f64) -> Result<f64> {
    let rho = check_args(rho, x)?;
    if x <= 3.0 && rho >= 0.05 {
        let i = bessel_i_log(ComplexVal::new(0.0, rho), x)?;
        // e^{πρ/2}/sinh(πρ) = 2 e^{−πρ/2}/(1 − e^{−2πρ})
        let scale = LogComplex::new((2.0f64).ln() - PI * rho / 2.0 - (-(-2.0 * PI * rho).exp()).ln_1p(), 0.0);
        let v = (i * scale).to_complex()?;
        return Ok(-PI * v.im);
    }
    ode_continuation(rho, x)
}

fn large_x_expansion(rho: f64, x: f64) -> (f64, f64) {
    // K_ν(x) ~ √(π/2x) e^{−x} Σ a_k x^{−k}, a_k = Π_{j≤k}(4ν² − (2j−1)²)/(k! 8^k),
    // with 4ν² = −4ρ². Returned without the e^{−x} factor, as (K, x dK/dx).
    let mu = -4.0 * rho * rho;
    let mut a = 1.0;
    let mut s = 1.0;
    let mut ds = -1.0 - 0.5 / x;
    let mut last = f64::INFINITY;
    // Terms grow until k ≈ ρ²/2x before the asymptotic decrease sets in.
    let hump = rho * rho / (2.0 * x) + 1.0;
    for k in 1..2000 {
        let kf = k as f64;
        a *= (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
        if kf > hump && a.abs() > last {
            break;
        }
        last = a.abs();
        s += a;
        ds += a * (-1.0 - (kf + 0.5) / x);
        if a.abs() < 1e-18 * s.abs() {
            break;
        }
    }
    let c = (PI / (2.0 * x)).sqrt();
    (c * s, c * ds * x)
}

fn ode_continuation(rho: f64, x: f64) -> Result<f64> {
    // Start far enough out that the expansion's hump (≈ e^{ρ²/2x0}) costs at
    // most e^5 in cancellation.
    let x0 = (3.0 * rho).max(60.0).max(2.0 * x).max(rho * rho / 10.0);
    let (y0, dy0) = large_x_expansion(rho, x0);
    // Solution carried as y·e^{log_scale}; y(u) = K(e^u) obeys y'' = (e^{2u} − ρ²) y.
    let mut log_scale = -x0;
    let mut y = y0;
    let mut dy = dy0;
    let mut u = x0.ln();
    let u_end = x.ln();
    let q = |u: f64| (2.0 * u).exp() - rho * rho;
    let rhs = |u: f64, y: f64, dy: f64| (dy, q(u) * y);
    while u > u_end {
        let qu = q(u);
        // Oscillatory stretch needs the finer step; evanescent stretch is benign.
        let base = if qu < 0.0 { 0.002 } else { 0.01 };
        let h = (base / qu.abs().max(1.0).sqrt()).min(0.002).min(u - u_end);
        let h = -h;
        let (k1y, k1d) = rhs(u, y, dy);
        let (k2y, k2d) = rhs(u + h / 2.0, y + h / 2.0 * k1y, dy + h / 2.0 * k1d);
        let (k3y, k3d) = rhs(u + h / 2.0, y + h / 2.0 * k2y, dy + h / 2.0 * k2d);
        let (k4y, k4d) = rhs(u + h, y + h * k3y, dy + h * k3d);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        dy += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        u += h;
        let m = y.abs().max(dy.abs());
        if m > 1e100 {
            log_scale += m.ln();
            y /= m;
            dy /= m;
        }
    }
    let v = y * (log_scale + PI * rho / 2.0).exp();
    if !v.is_finite() {
        return Err(Error::Overflow("macdonald_k continuation".into()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn order_zero_value() {
        assert_relative_eq!(macdonald_k(0.0, 1.0).unwrap(), 0.421_024_438_240_708_3, max_relative = 1e-12);
        assert_relative_eq!(
            macdonald_k_scaled_continuation(0.0, 1.0).unwrap(),
            0.421_024_438_240_708_3,
            max_relative = 1e-8
        );
    }

    #[test]
    fn even_in_order() {
        for (rho, x) in [(0.7, 0.3), (5.0, 1.0), (30.0, 12.0)] {
            assert_eq!(macdonald_k(rho, x).unwrap(), macdonald_k(-rho, x).unwrap());
        }
    }

    #[test]
    fn two_routes_agree() {
        for (rho, x) in [(5.0, 1.0), (0.5, 0.1), (2.0, 2.5), (12.0, 4.0), (20.0, 19.0), (20.0, 0.1), (3.0, 20.0)] {
            let a = macdonald_k_scaled(rho, x).unwrap();
            let b = macdonald_k_scaled_continuation(rho, x).unwrap();
            let scale = a.abs().max(b.abs());
            assert!((a - b).abs() <= 1e-7 * scale, "rho={rho} x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn cap_and_domain() {
        assert!(matches!(macdonald_k(301.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(macdonald_k(1.0, 0.0), Err(Error::Domain(_))));
        assert!(macdonald_k_scaled(300.0, 150.0).unwrap().is_finite());
    }
}
