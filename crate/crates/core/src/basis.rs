//! The six separated bases on H₂, their flat-plane limits, and the
//! `R`-dependent prefactors that connect the two.
//!
//! Only the horocyclic family carries a normalization constant; the others
//! are evaluated exactly as the separated products stand, so comparisons
//! are always made after dividing by [`prefactor`].

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::contraction::{kk_amplitude, KK_CORRECTION};
use crate::error::{Error, Result};
use crate::geometry::{ChartId, ChartPoint, EuclidPoint};
use crate::logc::LogComplex;
use crate::specfun::{
    bessel_j_log, hyp2f1, legendre_p_interval_log, legendre_p_ray_log, log_gamma_complex, macdonald_k_scaled,
    pcf_d,
};
use crate::ComplexVal;

fn c(re: f64, im: f64) -> ComplexVal {
    ComplexVal::new(re, im)
}

/// Separation constants of one basis function. The tag names the chart the
/// family lives on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum BasisParams {
    #[serde(rename = "pseudo_spherical")]
    S { rho: f64, m: i32 },
    #[serde(rename = "equidistant")]
    Eq { rho: f64, nu: f64, eps: i8 },
    #[serde(rename = "horocyclic")]
    Ho { rho: f64, s: f64 },
    #[serde(rename = "semi_circular_parabolic")]
    Scp { rho: f64, s: f64 },
    #[serde(rename = "elliptic_parabolic")]
    Ep { rho: f64, s: f64 },
    #[serde(rename = "hyperbolic_parabolic")]
    Hp { rho: f64, s: f64 },
}

/// Parameters of the flat-plane limit functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum LimitParams {
    #[serde(rename = "pseudo_spherical")]
    Polar { k: f64, m: i32 },
    #[serde(rename = "equidistant")]
    Plane { k1: f64, k2: f64, eps: i8 },
    #[serde(rename = "horocyclic")]
    HoLim { k1: f64, k2: f64 },
    #[serde(rename = "semi_circular_parabolic")]
    ScpLim { k1: f64, k2: f64 },
    #[serde(rename = "elliptic_parabolic")]
    EpLim { k: f64, lambda: f64 },
    #[serde(rename = "hyperbolic_parabolic")]
    HpLim { k1: f64, k2: f64 },
}

/// A basis or limit value; `linear` is present when it is representable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasisValue {
    pub value: LogComplex,
    pub linear: Option<ComplexVal>,
}

impl BasisValue {
    pub fn new(value: LogComplex) -> Self {
        BasisValue { value, linear: value.to_complex().ok() }
    }

    pub fn from_linear(z: ComplexVal) -> Self {
        BasisValue { value: LogComplex::from_complex(z), linear: Some(z) }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} = {v} must be positive")))
    }
}

fn sign(eps: i8) -> Result<f64> {
    match eps {
        1 => Ok(1.0),
        -1 => Ok(-1.0),
        _ => Err(Error::domain(format!("ε = {eps} must be ±1"))),
    }
}

impl BasisParams {
    pub fn rho(&self) -> f64 {
        match *self {
            BasisParams::S { rho, .. }
            | BasisParams::Eq { rho, .. }
            | BasisParams::Ho { rho, .. }
            | BasisParams::Scp { rho, .. }
            | BasisParams::Ep { rho, .. }
            | BasisParams::Hp { rho, .. } => rho,
        }
    }

    /// The chart the family is separated in (for SCP, the unrotated one).
    pub fn chart(&self) -> ChartId {
        match self {
            BasisParams::S { .. } => ChartId::PseudoSpherical,
            BasisParams::Eq { .. } => ChartId::Equidistant,
            BasisParams::Ho { .. } => ChartId::Horocyclic,
            BasisParams::Scp { .. } => ChartId::SemiCircularParabolic,
            BasisParams::Ep { .. } => ChartId::EllipticParabolic,
            BasisParams::Hp { .. } => ChartId::HyperbolicParabolic,
        }
    }

    pub fn accepts(&self, chart: ChartId) -> bool {
        chart == self.chart()
            || (matches!(self, BasisParams::Scp { .. }) && chart == ChartId::SemiCircularParabolicRotated)
    }

    pub fn validate(&self) -> Result<()> {
        positive("ρ", self.rho())?;
        match *self {
            BasisParams::Eq { nu, eps, .. } => {
                sign(eps)?;
                if !nu.is_finite() {
                    return Err(Error::NonFinite("ν".into()));
                }
            }
            BasisParams::Ho { s, .. } | BasisParams::Scp { s, .. } => {
                if s == 0.0 || !s.is_finite() {
                    return Err(Error::domain("s must be a nonzero real"));
                }
            }
            BasisParams::Ep { s, .. } => {
                if !s.is_finite() {
                    return Err(Error::NonFinite("s".into()));
                }
            }
            BasisParams::Hp { s, .. } => positive("s (discrete-spectrum case s² < 0 excluded)", s)?,
            BasisParams::S { .. } => {}
        }
        Ok(())
    }
}

impl LimitParams {
    /// Chart of the hyperboloid family this limit belongs to.
    pub fn family(&self) -> ChartId {
        match self {
            LimitParams::Polar { .. } => ChartId::PseudoSpherical,
            LimitParams::Plane { .. } => ChartId::Equidistant,
            LimitParams::HoLim { .. } => ChartId::Horocyclic,
            LimitParams::ScpLim { .. } => ChartId::SemiCircularParabolic,
            LimitParams::EpLim { .. } => ChartId::EllipticParabolic,
            LimitParams::HpLim { .. } => ChartId::HyperbolicParabolic,
        }
    }

    /// Flat wavenumber `k`.
    pub fn k(&self) -> f64 {
        match *self {
            LimitParams::Polar { k, .. } | LimitParams::EpLim { k, .. } => k,
            LimitParams::Plane { k1, k2, .. }
            | LimitParams::HoLim { k1, k2 }
            | LimitParams::ScpLim { k1, k2 }
            | LimitParams::HpLim { k1, k2 } => k1.hypot(k2),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            LimitParams::Polar { k, .. } => positive("k", k),
            LimitParams::Plane { k1, k2, eps } => {
                sign(eps)?;
                positive("k", k1.hypot(k2))
            }
            LimitParams::HoLim { k1, k2 } => {
                positive("k1", k1)?;
                if k2 == 0.0 || !k2.is_finite() {
                    return Err(Error::domain("horocyclic limit needs k2 ≠ 0"));
                }
                Ok(())
            }
            LimitParams::ScpLim { k1, k2 } => {
                positive("k1", k1)?;
                positive("k2", k2)?;
                if k1 == k2 {
                    return Err(Error::domain("semi-circular-parabolic limit needs k1 ≠ k2"));
                }
                Ok(())
            }
            LimitParams::EpLim { k, lambda } => {
                positive("k", k)?;
                if !lambda.is_finite() {
                    return Err(Error::NonFinite("λ".into()));
                }
                Ok(())
            }
            LimitParams::HpLim { k1, k2 } => {
                positive("k2", k2)?;
                if !(k1 > k2) {
                    return Err(Error::domain(format!(
                        "hyperbolic-parabolic limit needs k1 > k2 (k1 = {k1}, k2 = {k2}): discrete-spectrum case excluded"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Below this `τ` the hypergeometric argument `−sinh²(τ/2)` is used directly.
const CONICAL_DIRECT_MAX: f64 = 1.5;
/// Below this `τ` (and above the direct range) the Pfaff form in `tanh²(τ/2)`.
const CONICAL_PFAFF_MAX: f64 = 2.4;

/// `P^{m}_{iρ−½}(cosh τ)` for integer `m ≥ 0` from
/// `Γ(½+iρ+m)/Γ(½+iρ−m) (sinh(τ/2) cosh(τ/2))^m/m! ₂F₁(a, b; 1+m; −sinh²(τ/2))`,
/// `a, b = ½±iρ+m`. The ₂F₁ is summed directly for small `τ`, after a Pfaff
/// transformation for moderate `τ`, and through the `1/z` connection formula
/// beyond that (which loses about `log10(1/ρ)` digits as `ρ → 0`).
pub fn conical_p(m: u32, rho: f64, tau: f64) -> Result<LogComplex> {
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(Error::domain(format!("conical_p: τ = {tau} must be finite and ≥ 0")));
    }
    let mf = m as f64;
    if tau == 0.0 {
        return Ok(if m == 0 { LogComplex::ONE } else { LogComplex::ZERO });
    }
    let (sh, ch) = ((tau / 2.0).sinh(), (tau / 2.0).cosh());
    let ratio = log_gamma_complex(c(0.5 + mf, rho))? / log_gamma_complex(c(0.5 - mf, rho))?;
    let mut fact = 0.0;
    for j in 2..=m {
        fact += (j as f64).ln();
    }
    let power = LogComplex::new(mf * (sh * ch).ln() - fact, 0.0);
    let (a, b, cc) = (c(0.5 + mf, rho), c(0.5 + mf, -rho), c(1.0 + mf, 0.0));
    let f = if tau <= CONICAL_DIRECT_MAX {
        LogComplex::from_complex(hyp2f1(a, b, cc, c(-sh * sh, 0.0))?.value)
    } else if tau <= CONICAL_PFAFF_MAX {
        let th = sh / ch;
        let g = hyp2f1(a, cc - b, cc, c(th * th, 0.0))?;
        LogComplex::from_real(ch).powc(-2.0 * a).scale(g.value)
    } else {
        if rho == 0.0 {
            return Err(Error::domain("conical_p: ρ = 0 needs the logarithmic connection formula (τ > 2.4)"));
        }
        let w = c(-1.0 / (sh * sh), 0.0);
        let term = |a: ComplexVal, b: ComplexVal| -> Result<LogComplex> {
            let coef = log_gamma_complex(cc)? * log_gamma_complex(b - a)?
                / (log_gamma_complex(b)? * log_gamma_complex(cc - a)?);
            let g = hyp2f1(a, a - cc + 1.0, a - b + 1.0, w)?;
            Ok((coef * LogComplex::from_real(sh * sh).powc(-a)).scale(g.value))
        };
        term(a, b)?.add(&term(b, a)?)
    };
    Ok(ratio * power * f)
}

/// `√(ρ sinh πρ / 2R²π³)` in log form.
pub fn ho_normalization(rho: f64, radius: f64) -> LogComplex {
    // ln sinh(πρ) = πρ + ln((1 − e^{−2πρ})/2)
    let ln_sinh = PI * rho + (-(-2.0 * PI * rho).exp()).ln_1p() - 2f64.ln();
    LogComplex::new(0.5 * (rho.ln() + ln_sinh - 2f64.ln() - 2.0 * radius.ln() - 3.0 * PI.ln()), 0.0)
}

fn jk_product(rho: f64, j_arg: f64, k_arg: f64) -> Result<LogComplex> {
    // J·K = (e^{−πρ/2} J)(e^{πρ/2} K): the exponentials cancel exactly.
    let j = bessel_j_log(c(0.0, rho), j_arg)?;
    let k = macdonald_k_scaled(rho, k_arg)?;
    Ok(j * LogComplex::new(-PI * rho / 2.0, 0.0) * LogComplex::from_real(k))
}

pub fn eval_basis(params: &BasisParams, p: &ChartPoint, radius: f64) -> Result<BasisValue> {
    params.validate()?;
    if !params.accepts(p.chart) {
        return Err(Error::TagMismatch { params: format!("{}", params.chart()), chart: p.chart.to_string() });
    }
    if !(radius > 0.0) {
        return Err(Error::domain(format!("radius R = {radius} must be positive")));
    }
    let (a, b) = (p.xi1, p.xi2);
    let v = match *params {
        BasisParams::S { rho, m } => {
            if !(a >= 0.0) || !b.is_finite() {
                return Err(Error::domain(format!("pseudo-spherical point (τ, φ) = ({a}, {b}) out of domain")));
            }
            conical_p(m.unsigned_abs(), rho, a)? * LogComplex::new(0.0, m as f64 * b)
        }
        BasisParams::Eq { rho, nu, eps } => {
            p.check_interior()?;
            let eps = sign(eps)?;
            let pl = legendre_p_interval_log(c(0.0, rho), c(-0.5, nu), -eps * a.tanh())?;
            LogComplex::new(-0.5 * a.cosh().ln(), nu * b) * pl
        }
        BasisParams::Ho { rho, s } => {
            p.check_interior()?;
            let k = macdonald_k_scaled(rho, s.abs() * b)?;
            ho_normalization(rho, radius)
                * LogComplex::new(-PI * rho / 2.0 + 0.5 * b.ln(), s * a)
                * LogComplex::from_real(k)
        }
        BasisParams::Scp { rho, s } => {
            p.check_interior()?;
            let rs = s.abs().sqrt();
            let (ja, ka) = if s > 0.0 { (a, b) } else { (b, a) };
            LogComplex::new(0.5 * (a * b).ln(), 0.0) * jk_product(rho, rs * ja, rs * ka)?
        }
        BasisParams::Ep { rho, s } => {
            p.check_interior()?;
            let p1 = legendre_p_interval_log(c(0.0, rho), c(-0.5, s), b.sin())?;
            let p2 = legendre_p_interval_log(c(0.0, s), c(-0.5, rho), a.tanh())?;
            LogComplex::new(0.5 * b.cos().ln(), 0.0) * p1 * p2
        }
        BasisParams::Hp { rho, s } => {
            p.check_interior()?;
            let p1 = legendre_p_ray_log(c(0.0, rho), c(-0.5, s), a.cosh())?;
            let p2 = legendre_p_interval_log(c(0.0, rho), c(-0.5, s), b.cos())?;
            LogComplex::new(0.5 * (a.sinh() * b.sin()).ln(), 0.0) * p1 * p2
        }
    };
    Ok(BasisValue::new(v))
}

/// `M = π/4 + R[k cosh⁻¹(k/|k2|) − k1]`.
pub fn phase_m(k1: f64, k2: f64, radius: f64) -> Result<f64> {
    if k2 == 0.0 || !k2.is_finite() || !k1.is_finite() {
        return Err(Error::domain("phase_m needs k2 ≠ 0"));
    }
    let k = k1.hypot(k2);
    let w = k / k2.abs();
    let acosh = (w + (w * w - 1.0).max(0.0).sqrt()).ln();
    Ok(FRAC_PI_4 + radius * (k * acosh - k1))
}

/// `(δ1, δ2)` solved from the sum/difference pair
/// `δ1+δ2 = √2R(k1+k2) − Rk sinh⁻¹((k2+k1)/(k2−k1))`,
/// `δ1−δ2 = √2R(k2−k1) − Rk sinh⁻¹((k2−k1)/(k2+k1))`.
pub fn phase_deltas(k1: f64, k2: f64, radius: f64) -> Result<(f64, f64)> {
    if !(k2 > k1 && k1 > 0.0) {
        return Err(Error::domain(format!("phase_deltas needs k2 > k1 > 0 (k1 = {k1}, k2 = {k2})")));
    }
    let k = k1.hypot(k2);
    let asinh = |w: f64| (w + (w * w + 1.0).sqrt()).ln();
    let sum = SQRT_2 * radius * (k1 + k2) - radius * k * asinh((k2 + k1) / (k2 - k1));
    let diff = SQRT_2 * radius * (k2 - k1) - radius * k * asinh((k2 - k1) / (k2 + k1));
    Ok(((sum + diff) / 2.0, (sum - diff) / 2.0))
}

/// Limit function at `e`. `radius` only enters the horocyclic and
/// semi-circular-parabolic targets, through the phases `M`, `δ1`, `δ2`.
pub fn eval_limit(lp: &LimitParams, e: &EuclidPoint, radius: f64) -> Result<BasisValue> {
    lp.validate()?;
    let (x, y) = (e.x, e.y);
    let i = c(0.0, 1.0);
    let z = match *lp {
        LimitParams::Polar { k, m } => {
            let j = bessel_j_log(c(m.unsigned_abs() as f64, 0.0), k * e.r())?;
            return Ok(BasisValue::new(j * LogComplex::new(0.0, m as f64 * e.phi())));
        }
        LimitParams::Plane { k1, k2, eps } => (i * (k1 * x + sign(eps)? * k2 * y)).exp(),
        LimitParams::HoLim { k1, k2 } => {
            let m = phase_m(k1, k2, radius)?;
            (k1 * x - m).sin() * (i * k2 * y).exp()
        }
        LimitParams::ScpLim { k1, k2 } => {
            // For k1 > k2 the roles of (x, k1) and (y, k2) are exchanged.
            let (k1, k2, x, y) = if k1 < k2 { (k1, k2, x, y) } else { (k2, k1, y, x) };
            let (d1, d2) = phase_deltas(k1, k2, radius)?;
            (i * (k2 * y + d1 - FRAC_PI_4)).exp() * (k1 * x - FRAC_PI_4 + d2).sin()
        }
        LimitParams::EpLim { k, lambda } => {
            let (xi, eta) = e.parabolic();
            let root = ComplexVal::from_polar((2.0 * k).sqrt(), -FRAC_PI_4);
            let il = c(0.0, lambda / k);
            pcf_d(-(il + 1.0) / 2.0, root * eta)? * pcf_d((il - 1.0) / 2.0, root * xi)?
        }
        LimitParams::HpLim { k1, k2 } => (i * (k2 * y - k1 * x)).exp(),
    };
    Ok(BasisValue::from_linear(z))
}

/// The `R`-dependent constant by which the hyperboloid basis is divided
/// before its limit appears.
pub fn prefactor(family: ChartId, lp: &LimitParams, radius: f64) -> Result<LogComplex> {
    lp.validate()?;
    let fam = if family == ChartId::SemiCircularParabolicRotated { ChartId::SemiCircularParabolic } else { family };
    if fam != lp.family() {
        return Err(Error::TagMismatch { params: lp.family().to_string(), chart: family.to_string() });
    }
    if !(radius > 0.0) {
        return Err(Error::domain(format!("radius R = {radius} must be positive")));
    }
    let k = lp.k();
    let ln2 = 2f64.ln();
    let half_ln_pi = 0.5 * PI.ln();
    Ok(match *lp {
        LimitParams::Polar { k, m } => {
            let ma = m.unsigned_abs() as f64;
            // (−kR)^{|m|}
            LogComplex::new(ma * (k * radius).ln(), PI * ma)
        }
        LimitParams::Plane { k1, .. } => {
            LogComplex::new(half_ln_pi, k * radius * ln2)
                / log_gamma_complex(c(0.75, -radius * (k + k1) / 2.0))?
                / log_gamma_complex(c(0.75, -radius * (k - k1) / 2.0))?
        }
        LimitParams::HoLim { k1, .. } => {
            // Overall sign: the large-order Macdonald expansion yields sin(M − k1x).
            LogComplex::new(-(radius * PI).ln() + 0.5 * (k / (2.0 * k1)).ln(), PI)
        }
        LimitParams::ScpLim { k1, k2 } => LogComplex::new(-radius.ln() - 0.5 * (2.0 * k1 * k2).ln(), PI),
        LimitParams::EpLim { k, lambda } => {
            let g = log_gamma_complex(c(0.75, -lambda / (4.0 * k) - k * radius))?;
            LogComplex::exp(c(0.5, 2.0 * k * radius + lambda / (2.0 * k)) * ln2) / (g * g)
        }
        LimitParams::HpLim { k1, k2 } => {
            let q = (k1 * k1 - k2 * k2).sqrt();
            let b = kk_amplitude(k1, k2, radius)? * LogComplex::from_real(KK_CORRECTION);
            LogComplex::new(half_ln_pi, k * radius * ln2) * b
                / log_gamma_complex(c(0.75, -radius * (k + q) / 2.0))?
                / log_gamma_complex(c(0.75, -radius * (k - q) / 2.0))?
        }
    })
}
