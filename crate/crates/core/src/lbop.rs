//! Finite-difference Laplace–Beltrami operator on the charts, the flat
//! Laplacian for limit targets, and the elliptic-parabolic separation ODEs.
//!
//! Metric factors come from [`geometry::lb_coefficients`] in closed form;
//! only the field itself is differenced.

use serde::{Deserialize, Serialize};

use crate::basis::{eval_basis, eval_limit, BasisParams, LimitParams};
use crate::error::{Error, Result};
use crate::geometry::{lb_coefficients, ChartPoint, EuclidPoint};
use crate::logc::LogComplex;
use crate::specfun::{legendre_p_interval_log, pcf_d};
use crate::ComplexVal;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FDScheme {
    /// 2 or 4.
    pub order: u8,
    /// Step is `rel_step · max(|ξ|, 1)` per coordinate.
    pub rel_step: f64,
    /// One level of Richardson extrapolation (steps `h` and `h/2`).
    pub richardson: bool,
}

impl Default for FDScheme {
    fn default() -> Self {
        FDScheme { order: 4, rel_step: f64::EPSILON.powf(1.0 / 6.0), richardson: false }
    }
}

impl FDScheme {
    pub fn order2() -> Self {
        FDScheme { order: 2, rel_step: f64::EPSILON.powf(1.0 / 4.0), richardson: false }
    }

    fn validate(&self) -> Result<()> {
        if self.order != 2 && self.order != 4 {
            return Err(Error::domain(format!("FD order {} (must be 2 or 4)", self.order)));
        }
        if !(self.rel_step > 0.0 && self.rel_step < 0.5) {
            return Err(Error::domain(format!("FD relative step {}", self.rel_step)));
        }
        Ok(())
    }

    fn reach(&self) -> f64 {
        if self.order == 4 { 2.0 } else { 1.0 }
    }

    fn offsets(&self) -> &'static [(f64, f64, f64)] {
        // (offset, first-derivative weight, second-derivative weight), scaled
        // by 1/h and 1/h² respectively.
        const O2: [(f64, f64, f64); 3] = [(-1.0, -0.5, 1.0), (0.0, 0.0, -2.0), (1.0, 0.5, 1.0)];
        const O4: [(f64, f64, f64); 5] = [
            (-2.0, 1.0 / 12.0, -1.0 / 12.0),
            (-1.0, -8.0 / 12.0, 16.0 / 12.0),
            (0.0, 0.0, -30.0 / 12.0),
            (1.0, 8.0 / 12.0, 16.0 / 12.0),
            (2.0, -1.0 / 12.0, -1.0 / 12.0),
        ];
        if self.order == 4 { &O4 } else { &O2 }
    }
}

/// Shrink `h` until `x ± reach·h` stays inside the domain.
fn fit_step(mut h: f64, reach: f64, ok: impl Fn(f64) -> bool) -> Result<f64> {
    for _ in 0..20 {
        if ok(-reach * h) && ok(reach * h) {
            return Ok(h);
        }
        h *= 0.5;
    }
    Err(Error::domain("finite-difference stencil leaves the domain"))
}

/// First and second derivatives in each of two directions, from a field
/// given in log form and rescaled by the stencil's largest modulus.
struct Derivs {
    d1: [ComplexVal; 2],
    d2: [ComplexVal; 2],
    center: ComplexVal,
    log_scale: f64,
}

fn derivs<F>(f: F, x0: [f64; 2], h: [f64; 2], scheme: &FDScheme) -> Result<Derivs>
where
    F: Fn(f64, f64) -> Result<LogComplex>,
{
    let offs = scheme.offsets();
    let center = f(x0[0], x0[1])?;
    let mut vals: Vec<(usize, f64, f64, LogComplex)> = Vec::with_capacity(2 * offs.len());
    for dir in 0..2 {
        for &(o, w1, w2) in offs {
            let v = if o == 0.0 {
                center
            } else if dir == 0 {
                f(x0[0] + o * h[0], x0[1])?
            } else {
                f(x0[0], x0[1] + o * h[1])?
            };
            vals.push((dir, w1, w2, v));
        }
    }
    let log_scale = vals.iter().map(|v| v.3.log_mag).fold(f64::NEG_INFINITY, f64::max);
    let unscale = |v: LogComplex| -> ComplexVal {
        if log_scale == f64::NEG_INFINITY {
            ComplexVal::new(0.0, 0.0)
        } else {
            LogComplex::new(v.log_mag - log_scale, v.phase).to_complex_lossy()
        }
    };
    let zero = ComplexVal::new(0.0, 0.0);
    let mut d1 = [zero; 2];
    let mut d2 = [zero; 2];
    for (dir, w1, w2, v) in vals {
        let z = unscale(v);
        d1[dir] += z * (w1 / h[dir]);
        d2[dir] += z * (w2 / (h[dir] * h[dir]));
    }
    Ok(Derivs { d1, d2, center: unscale(center), log_scale })
}

fn richardson<F>(f: &F, x0: [f64; 2], h: [f64; 2], scheme: &FDScheme) -> Result<Derivs>
where
    F: Fn(f64, f64) -> Result<LogComplex>,
{
    let coarse = derivs(f, x0, h, scheme)?;
    if !scheme.richardson {
        return Ok(coarse);
    }
    let fine = derivs(f, x0, [h[0] / 2.0, h[1] / 2.0], scheme)?;
    let w = 2f64.powi(scheme.order as i32);
    // Bring both to the fine scale before combining.
    let s = (coarse.log_scale - fine.log_scale).exp();
    let mix = |a: ComplexVal, b: ComplexVal| (b * w - a * s) / (w - 1.0);
    Ok(Derivs {
        d1: [mix(coarse.d1[0], fine.d1[0]), mix(coarse.d1[1], fine.d1[1])],
        d2: [mix(coarse.d2[0], fine.d2[0]), mix(coarse.d2[1], fine.d2[1])],
        center: fine.center,
        log_scale: fine.log_scale,
    })
}

fn chart_steps(p: &ChartPoint, scheme: &FDScheme) -> Result<[f64; 2]> {
    let r = scheme.reach();
    let h1 = fit_step(scheme.rel_step * p.xi1.abs().max(1.0), r, |d| p.chart.contains(p.xi1 + d, p.xi2))?;
    let h2 = fit_step(scheme.rel_step * p.xi2.abs().max(1.0), r, |d| p.chart.contains(p.xi1, p.xi2 + d))?;
    Ok([h1, h2])
}

/// `Δ_LB` of a field given in log form, returned as
/// `(Δf, f) · exp(−log_scale)` together with `log_scale`.
fn lb_scaled<F>(f: F, p: &ChartPoint, radius: f64, scheme: &FDScheme) -> Result<(ComplexVal, ComplexVal, f64)>
where
    F: Fn(&ChartPoint) -> Result<LogComplex>,
{
    scheme.validate()?;
    if !(radius > 0.0) {
        return Err(Error::domain(format!("radius R = {radius} must be positive")));
    }
    p.check_interior()?;
    let h = chart_steps(p, scheme)?;
    let d = richardson(&|a, b| f(&p.with(a, b)), [p.xi1, p.xi2], h, scheme)?;
    let (c11, c1, c22) = lb_coefficients(p)?;
    let lap = -(d.d2[0] * c11 + d.d1[0] * c1 + d.d2[1] * c22) / (radius * radius);
    Ok((lap, d.center, d.log_scale))
}

/// Finite-difference `Δ_LB f` at `p`.
pub fn lb_apply<F>(f: F, p: &ChartPoint, radius: f64, scheme: &FDScheme) -> Result<ComplexVal>
where
    F: Fn(&ChartPoint) -> Result<ComplexVal>,
{
    let (lap, _, s) = lb_scaled(|q| f(q).map(LogComplex::from_complex), p, radius, scheme)?;
    if s == f64::NEG_INFINITY {
        return Ok(lap);
    }
    Ok(lap * s.exp())
}

/// `Δ_LB f` for a field already in log form; the result is also in log form.
pub fn lb_apply_log<F>(f: F, p: &ChartPoint, radius: f64, scheme: &FDScheme) -> Result<LogComplex>
where
    F: Fn(&ChartPoint) -> Result<LogComplex>,
{
    let (lap, _, s) = lb_scaled(f, p, radius, scheme)?;
    Ok(LogComplex::from_complex(lap) * LogComplex::new(s, 0.0))
}

/// `|Δ_LB Ψ − λΨ| / (λ · max|Ψ|)` with `λ = (ρ²+¼)/R²`, the maximum taken
/// over the stencil.
pub fn helmholtz_residual(params: &BasisParams, p: &ChartPoint, radius: f64, scheme: &FDScheme) -> Result<f64> {
    let (lap, center, _) = lb_scaled(|q| Ok(eval_basis(params, q, radius)?.value), p, radius, scheme)?;
    let rho = params.rho();
    let lambda = (rho * rho + 0.25) / (radius * radius);
    Ok((lap - center * lambda).norm() / lambda)
}

/// Rayleigh-type quotient `Δ_LB Ψ / Ψ` at a single point.
pub fn eigenvalue_estimate(params: &BasisParams, p: &ChartPoint, radius: f64, scheme: &FDScheme) -> Result<ComplexVal> {
    let (lap, center, _) = lb_scaled(|q| Ok(eval_basis(params, q, radius)?.value), p, radius, scheme)?;
    if center.norm() == 0.0 {
        return Err(Error::IllConditioned("basis value vanishes at the sample point".into()));
    }
    Ok(lap / center)
}

/// `|Δf + k²f| / (k² · max|f|)` for a flat limit function in Cartesian
/// coordinates.
pub fn flat_residual(lp: &LimitParams, e: &EuclidPoint, scheme: &FDScheme) -> Result<f64> {
    scheme.validate()?;
    lp.validate()?;
    let k = lp.k();
    let h = [scheme.rel_step * e.x.abs().max(1.0), scheme.rel_step * e.y.abs().max(1.0)];
    // The radius only shifts the horocyclic/SCP phases, which the flat
    // equation does not see.
    let f = |x: f64, y: f64| Ok(eval_limit(lp, &EuclidPoint::new(x, y), 1.0)?.value);
    let d = richardson(&f, [e.x, e.y], h, scheme)?;
    Ok((d.d2[0] + d.d2[1] + d.center * (k * k)).norm() / (k * k))
}

/// One-dimensional residual `|F'' + q(x) F| / (scale · max|F|)` on a
/// symmetric stencil around `x`.
fn ode_residual<F>(f: F, qx: f64, scale: f64, x: f64, scheme: &FDScheme) -> Result<f64>
where
    F: Fn(f64) -> Result<LogComplex>,
{
    scheme.validate()?;
    let h = scheme.rel_step * x.abs().max(1.0);
    // The second direction is a dummy with the same stencil.
    let d = richardson(&|a, _| f(a), [x, 0.0], [h, h], scheme)?;
    Ok((d.d2[0] + d.center * qx).norm() / scale)
}

/// Residual of `F'' + (s² − (ρ²+¼)/cosh²a) F = 0` for `F(a) = P^{is}_{iρ−½}(tanh a)`,
/// relative to the larger of the two potential terms.
pub fn ep_separation_residual(rho: f64, s: f64, a: f64, scheme: &FDScheme) -> Result<f64> {
    if !a.is_finite() {
        return Err(Error::NonFinite("a".into()));
    }
    let mu = ComplexVal::new(0.0, s);
    let nu = ComplexVal::new(-0.5, rho);
    let well = (rho * rho + 0.25) / a.cosh().powi(2);
    ode_residual(|t| legendre_p_interval_log(mu, nu, t.tanh()), s * s - well, (s * s).max(well), a, scheme)
}

/// Residual of `F'' + (λ + k²ξ²) F = 0` for `F(ξ) = D_{½(iλ/k−1)}(√(−2ik) ξ)`,
/// relative to `max(|λ| + k²ξ², k)`.
pub fn ep_limit_ode_residual(k: f64, lambda: f64, xi: f64, scheme: &FDScheme) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::domain(format!("k = {k} must be positive")));
    }
    if !xi.is_finite() || !lambda.is_finite() {
        return Err(Error::NonFinite("ξ or λ".into()));
    }
    let nu = ComplexVal::new(-0.5, lambda / (2.0 * k));
    let root = ComplexVal::from_polar((2.0 * k).sqrt(), -std::f64::consts::FRAC_PI_4);
    let q = lambda + k * k * xi * xi;
    let scale = (lambda.abs() + k * k * xi * xi).max(k);
    ode_residual(|t| Ok(LogComplex::from_complex(pcf_d(nu, root * t)?)), q, scale, xi, scheme)
}
