//! Contraction engine: parameter scalings, prefactor-quotiented errors,
//! convergence studies, and the two hyperbolic-parabolic computations.

use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{eval_basis, eval_limit, prefactor, BasisParams, LimitParams};
use crate::error::{Error, Result};
use crate::geometry::{chart_point_for_limit, ChartId, EuclidPoint};
use crate::logc::LogComplex;
use crate::specfun::{legendre_p_ray_log, log_gamma_complex};
use crate::ComplexVal;

/// Ratio between the true ray Legendre value at `√2` and [`kk_amplitude`].
pub const KK_CORRECTION: f64 = 2.0;

/// Default contraction grid.
pub const DEFAULT_R_GRID: [f64; 4] = [25.0, 50.0, 100.0, 200.0];

/// Largest fitted slope `p` (in `err ≈ C R^p`) a study accepts.
pub const MAX_SLOPE: f64 = -0.5;

/// Errors at or below this are roundoff: a study whose errors all fall
/// under it is reported exact.
pub const EXACT_FLOOR: f64 = 1e-12;

/// Step in Euclidean units for the x-derivative in the phase-pair metric.
pub const PAIR_STEP: f64 = 1e-3;

/// Below this `k1/k` the horocyclic prefactor `√(k/2k1)` is flagged.
pub const HO_K1_MIN_RATIO: f64 = 1e-3;

/// `hp_fit_ab` rejects sample pairs with `|sin(k1(x1 − x2))|` below this.
pub const FIT_MIN_SIN: f64 = 0.1;

/// Maps flat parameters and `R` to the hyperboloid separation constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingRule {
    pub family: ChartId,
}

impl ScalingRule {
    pub fn new(family: ChartId) -> Self {
        let family = if family == ChartId::SemiCircularParabolicRotated { ChartId::SemiCircularParabolic } else { family };
        ScalingRule { family }
    }

    /// Chart the contraction is carried out in.
    pub fn chart(&self) -> ChartId {
        match self.family {
            ChartId::SemiCircularParabolic => ChartId::SemiCircularParabolicRotated,
            f => f,
        }
    }
}

pub fn scale_params(rule: &ScalingRule, lp: &LimitParams, radius: f64) -> Result<BasisParams> {
    lp.validate()?;
    if rule.family != lp.family() {
        return Err(Error::TagMismatch { params: lp.family().to_string(), chart: rule.family.to_string() });
    }
    if !(radius > 0.0) {
        return Err(Error::domain(format!("radius R = {radius} must be positive")));
    }
    let rho = lp.k() * radius;
    Ok(match *lp {
        LimitParams::Polar { m, .. } => BasisParams::S { rho, m },
        // The hyperboloid ε carries the opposite sign to the plane-wave ε.
        LimitParams::Plane { k1, eps, .. } => BasisParams::Eq { rho, nu: k1 * radius, eps: -eps },
        LimitParams::HoLim { k2, .. } => BasisParams::Ho { rho, s: k2 * radius },
        LimitParams::ScpLim { k1, k2 } => BasisParams::Scp { rho, s: radius * radius * (k2 * k2 - k1 * k1) },
        LimitParams::EpLim { k, lambda } => BasisParams::Ep { rho, s: (k + lambda / (2.0 * k * radius)) * radius },
        LimitParams::HpLim { k1, k2 } => BasisParams::Hp { rho, s: radius * (k1 * k1 - k2 * k2).sqrt() },
    })
}

/// `Ψ_R / prefactor(R)` at the chart point representing `e`.
pub fn quotiented_value(family: ChartId, lp: &LimitParams, e: &EuclidPoint, radius: f64) -> Result<ComplexVal> {
    let rule = ScalingRule::new(family);
    let par = scale_params(&rule, lp, radius)?;
    let p = chart_point_for_limit(rule.chart(), e, radius)?;
    let psi = eval_basis(&par, &p, radius)?.value;
    let pref = prefactor(rule.family, lp, radius)?;
    if pref.is_zero() {
        return Err(Error::IllConditioned("prefactor vanishes".into()));
    }
    (psi / pref).to_complex()
}

fn difference(family: ChartId, lp: &LimitParams, e: &EuclidPoint, radius: f64) -> Result<ComplexVal> {
    let q = quotiented_value(family, lp, e, radius)?;
    let t = eval_limit(lp, e, radius)?.linear.ok_or_else(|| Error::Overflow("limit value".into()))?;
    Ok(q - t)
}

/// `|Ψ_R/prefactor − Ψ_limit|` at `e`.
pub fn contraction_error(family: ChartId, lp: &LimitParams, e: &EuclidPoint, radius: f64) -> Result<f64> {
    Ok(difference(family, lp, e, radius)?.norm())
}

/// Direction (unit vector) and wavenumber of the `sin(k·x − phase(R))`
/// factor in the horocyclic and semi-circular-parabolic targets.
fn sine_axis(lp: &LimitParams) -> Option<([f64; 2], f64)> {
    match *lp {
        LimitParams::HoLim { k1, .. } => Some(([1.0, 0.0], k1)),
        LimitParams::ScpLim { k1, k2 } if k1 < k2 => Some(([1.0, 0.0], k1)),
        LimitParams::ScpLim { k1, k2 } => Some(([0.0, 1.0], k2.min(k1))),
        _ => None,
    }
}

/// `sqrt(|D|² + |∂D/k|²)` with `D = Ψ_R/prefactor − Ψ_limit` and the
/// derivative taken along the sine factor by central differences. It does not
/// depend on where `phase(R)` happens to fall, unlike `|D|`.
pub fn contraction_error_pair(family: ChartId, lp: &LimitParams, e: &EuclidPoint, radius: f64) -> Result<f64> {
    let (dir, k) = sine_axis(lp).ok_or_else(|| Error::domain("phase-pair metric applies to HO and SCP limits"))?;
    let h = PAIR_STEP;
    let shift = |s: f64| EuclidPoint::new(e.x + s * dir[0], e.y + s * dir[1]);
    let d0 = difference(family, lp, e, radius)?;
    let dp = difference(family, lp, &shift(h), radius)?;
    let dm = difference(family, lp, &shift(-h), radius)?;
    let deriv = (dp - dm) / (2.0 * h * k);
    Ok((d0.norm_sqr() + deriv.norm_sqr()).sqrt())
}

/// Rate `|d phase/dR|` of the `R`-dependent phase inside the target, if any.
pub fn target_phase_rate(lp: &LimitParams) -> Option<f64> {
    match *lp {
        LimitParams::HoLim { k1, k2 } => {
            let k = k1.hypot(k2);
            Some((k * (k / k2.abs()).acosh() - k1).abs())
        }
        LimitParams::ScpLim { k1, k2 } => {
            let (a, b) = if k1 < k2 { (k1, k2) } else { (k2, k1) };
            let (d1, d2) = crate::basis::phase_deltas(a, b, 1.0).ok()?;
            Some(d1.abs().max(d2.abs()))
        }
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorMetric {
    Pointwise,
    PhasePair,
}

impl ErrorMetric {
    pub fn default_for(family: ChartId) -> Self {
        match family {
            ChartId::Horocyclic | ChartId::SemiCircularParabolic | ChartId::SemiCircularParabolicRotated => {
                ErrorMetric::PhasePair
            }
            _ => ErrorMetric::Pointwise,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRecord {
    pub radius: f64,
    /// Error under the study's metric.
    pub err: f64,
    /// `|Ψ_R/prefactor − Ψ_limit|`, always reported.
    pub pointwise: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    ExactAtAllR,
    NonMonotone,
    SlowRate,
    IllConditioned(String),
    Error(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass | Verdict::ExactAtAllR)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointStudy {
    pub point: EuclidPoint,
    pub records: Vec<ConvergenceRecord>,
    /// Least-squares slope of `ln err` against `ln R`.
    pub slope: Option<f64>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceStudy {
    pub family: ChartId,
    pub limit: LimitParams,
    pub metric: ErrorMetric,
    pub points: Vec<PointStudy>,
}

impl ConvergenceStudy {
    pub fn passed(&self) -> bool {
        !self.points.is_empty() && self.points.iter().all(|p| p.verdict.passed())
    }
}

/// Least-squares slope of `ln y` against `ln x` over the positive `y`.
pub fn fitted_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = xs.iter().zip(ys).filter(|(_, y)| **y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

fn judge(records: &[ConvergenceRecord]) -> (Option<f64>, Verdict) {
    if records.iter().all(|r| r.err <= EXACT_FLOOR) {
        return (None, Verdict::ExactAtAllR);
    }
    let rs: Vec<f64> = records.iter().map(|r| r.radius).collect();
    let es: Vec<f64> = records.iter().map(|r| r.err).collect();
    let slope = fitted_slope(&rs, &es);
    if !es.windows(2).all(|w| w[1] < w[0]) {
        return (slope, Verdict::NonMonotone);
    }
    match slope {
        Some(p) if p <= MAX_SLOPE => (slope, Verdict::Pass),
        _ => (slope, Verdict::SlowRate),
    }
}

fn check_grid(r_grid: &[f64]) -> Result<()> {
    if r_grid.len() < 3 {
        return Err(Error::domain(format!("R-grid needs at least 3 values (got {})", r_grid.len())));
    }
    if !r_grid.iter().all(|r| *r > 0.0 && r.is_finite()) || !r_grid.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::domain("R-grid must be positive and increasing"));
    }
    Ok(())
}

fn study_point(family: ChartId, lp: &LimitParams, metric: ErrorMetric, e: EuclidPoint, r_grid: &[f64]) -> PointStudy {
    let mut notes = Vec::new();
    let eval = |radius: f64| -> Result<ConvergenceRecord> {
        let pointwise = contraction_error(family, lp, &e, radius)?;
        let err = match metric {
            ErrorMetric::Pointwise => pointwise,
            ErrorMetric::PhasePair => contraction_error_pair(family, lp, &e, radius)?,
        };
        if !err.is_finite() {
            return Err(Error::NonFinite(format!("contraction error at R = {radius}")));
        }
        Ok(ConvergenceRecord { radius, err, pointwise })
    };
    let results: Vec<Result<ConvergenceRecord>> = r_grid.par_iter().map(|&r| eval(r)).collect();
    let mut records = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(rec) => records.push(rec),
            Err(err) => {
                return PointStudy { point: e, records, slope: None, verdict: Verdict::Error(err.to_string()), notes };
            }
        }
    }
    if let Some(rate) = target_phase_rate(lp) {
        let step = r_grid.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        if rate * step > PI {
            notes.push(format!(
                "target phase advances {:.1} rad per grid step; pointwise comparison aliased, {} metric used",
                rate * step,
                match metric {
                    ErrorMetric::PhasePair => "phase-pair",
                    ErrorMetric::Pointwise => "pointwise",
                }
            ));
        }
    }
    let (slope, mut verdict) = judge(&records);
    if let LimitParams::HoLim { k1, k2 } = *lp {
        if k1 / k1.hypot(k2) < HO_K1_MIN_RATIO {
            verdict = Verdict::IllConditioned(format!("prefactor √(k/2k1) diverges as k1 → 0 (k1 = {k1:e})"));
        }
    }
    PointStudy { point: e, records, slope, verdict, notes }
}

/// Errors over `r_grid` at each point, judged for strict decrease and a
/// fitted slope at most [`MAX_SLOPE`]. Evaluation failures become error
/// verdicts rather than aborting the study.
pub fn convergence_study(
    family: ChartId,
    lp: &LimitParams,
    points: &[EuclidPoint],
    r_grid: &[f64],
) -> Result<ConvergenceStudy> {
    convergence_study_with(family, lp, points, r_grid, ErrorMetric::default_for(family))
}

pub fn convergence_study_with(
    family: ChartId,
    lp: &LimitParams,
    points: &[EuclidPoint],
    r_grid: &[f64],
    metric: ErrorMetric,
) -> Result<ConvergenceStudy> {
    check_grid(r_grid)?;
    let rule = ScalingRule::new(family);
    if rule.family != lp.family() {
        return Err(Error::TagMismatch { params: lp.family().to_string(), chart: family.to_string() });
    }
    lp.validate()?;
    if metric == ErrorMetric::PhasePair && sine_axis(lp).is_none() {
        return Err(Error::domain("phase-pair metric applies to HO and SCP limits"));
    }
    let points = points.par_iter().map(|e| study_point(rule.family, lp, metric, *e, r_grid)).collect();
    Ok(ConvergenceStudy { family: rule.family, limit: *lp, metric, points })
}

/// Stationary-phase amplitude of `P^{ikR}_{−½+iRq}(√2)`, `q = √(k1²−k2²)`,
/// assembled term by term from its closed form (principal branches).
/// It is half the true value; see [`KK_CORRECTION`].
pub fn kk_amplitude(k1: f64, k2: f64, radius: f64) -> Result<LogComplex> {
    if !(k1 > k2 && k2 > 0.0) {
        return Err(Error::domain(format!("kk_amplitude needs k1 > k2 > 0 (k1 = {k1}, k2 = {k2})")));
    }
    if !(radius > 0.0) {
        return Err(Error::domain(format!("radius R = {radius} must be positive")));
    }
    let k = k1.hypot(k2);
    let q = (k1 * k1 - k2 * k2).sqrt();
    let r = radius;
    let c = ComplexVal::new;
    let two_pow = LogComplex::exp(c(-1.25, r * (q - k) / 2.0) * LN_2);
    let gammas = log_gamma_complex(c(0.5, -k * r))?
        / log_gamma_complex(c(0.5, -r * (q + k)))?
        / log_gamma_complex(c(0.5, r * (q - k)))?;
    // (i/Rk1)^{1/2}
    let root = LogComplex::new(-0.5 * (r * k1).ln(), FRAC_PI_4);
    let p1 = LogComplex::exp(c(0.0, r * q) * ((k1 - q) / (k + q)).ln());
    let p2 = LogComplex::exp(c(0.0, k * r) * (k / (k - k1)).ln());
    Ok(two_pow * gammas * root * p1 * p2)
}

/// `P^{ikR}_{−½+iRq}(√(2(1 + x/R)))`, the function whose large-`R` form is
/// `A e^{ik1x} + B e^{−ik1x}`.
pub fn hp_ray_value(k1: f64, k2: f64, radius: f64, x: f64) -> Result<LogComplex> {
    if !(k1 > k2 && k2 > 0.0) {
        return Err(Error::domain(format!(
            "hyperbolic-parabolic case needs k1 > k2 > 0 (k1 = {k1}, k2 = {k2}): discrete-spectrum case excluded"
        )));
    }
    let k = k1.hypot(k2);
    let q = (k1 * k1 - k2 * k2).sqrt();
    let arg = (2.0 * (1.0 + x / radius)).sqrt();
    legendre_p_ray_log(ComplexVal::new(0.0, k * radius), ComplexVal::new(-0.5, radius * q), arg)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ABFit {
    pub a: LogComplex,
    pub b: LogComplex,
    /// `1/|sin(k1(x1 − x2))|`, the growth factor of the 2×2 solve.
    pub condition: f64,
}

impl ABFit {
    pub fn ratio(&self) -> f64 {
        (self.a.log_mag - self.b.log_mag).exp()
    }
}

/// Solve `A e^{ik1 x_j} + B e^{−ik1 x_j} = P(x_j)` for the two samples.
pub fn hp_fit_ab(k1: f64, k2: f64, radius: f64, x_samples: [f64; 2]) -> Result<ABFit> {
    let [x1, x2] = x_samples;
    let sin = (k1 * (x1 - x2)).sin();
    if !(sin.abs() >= FIT_MIN_SIN) {
        return Err(Error::IllConditioned(format!(
            "|sin(k1(x1 − x2))| = {:.3e} below {FIT_MIN_SIN}: samples do not separate e^(±ik1x)",
            sin.abs()
        )));
    }
    let f1 = hp_ray_value(k1, k2, radius, x1)?;
    let f2 = hp_ray_value(k1, k2, radius, x2)?;
    let scale = f1.log_mag.max(f2.log_mag);
    let lin = |v: LogComplex| LogComplex::new(v.log_mag - scale, v.phase).to_complex_lossy();
    let (g1, g2) = (lin(f1), lin(f2));
    let e = |x: f64| ComplexVal::from_polar(1.0, k1 * x);
    // det = e^{ik1(x1−x2)} − e^{−ik1(x1−x2)} = 2i sin(k1(x1−x2))
    let det = ComplexVal::new(0.0, 2.0 * sin);
    let a = (g1 * e(-x2) - g2 * e(-x1)) / det;
    let b = (g2 * e(x1) - g1 * e(x2)) / det;
    let unscale = |z: ComplexVal| LogComplex::from_complex(z) * LogComplex::new(scale, 0.0);
    Ok(ABFit { a: unscale(a), b: unscale(b), condition: 1.0 / sin.abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn e(x: f64, y: f64) -> EuclidPoint {
        EuclidPoint::new(x, y)
    }

    #[test]
    fn scalings() {
        let s = |f: ChartId, lp: LimitParams, r: f64| scale_params(&ScalingRule::new(f), &lp, r).unwrap();
        assert_eq!(s(ChartId::PseudoSpherical, LimitParams::Polar { k: 2.0, m: 3 }, 10.0), BasisParams::S { rho: 20.0, m: 3 });
        match s(ChartId::EllipticParabolic, LimitParams::EpLim { k: 1.0, lambda: 2.0 }, 100.0) {
            BasisParams::Ep { rho, s } => {
                assert_relative_eq!(rho, 100.0);
                assert_relative_eq!(s, 101.0, max_relative = 1e-15);
            }
            other => panic!("{other:?}"),
        }
        match s(ChartId::SemiCircularParabolic, LimitParams::ScpLim { k1: 0.3, k2: 0.4 }, 10.0) {
            BasisParams::Scp { rho, s } => {
                assert_relative_eq!(rho, 5.0, max_relative = 1e-15);
                assert_relative_eq!(s, 7.0, max_relative = 1e-14);
            }
            other => panic!("{other:?}"),
        }
        let hp = LimitParams::HpLim { k1: 0.6, k2: 0.8 };
        let err = scale_params(&ScalingRule::new(ChartId::HyperbolicParabolic), &hp, 10.0).unwrap_err();
        assert!(err.to_string().contains("discrete-spectrum case excluded"), "{err}");
    }

    #[test]
    fn apex_is_exact() {
        let lp = LimitParams::Polar { k: 1.0, m: 0 };
        assert_eq!(contraction_error(ChartId::PseudoSpherical, &lp, &e(0.0, 0.0), 50.0).unwrap(), 0.0);
        let st = convergence_study(ChartId::PseudoSpherical, &lp, &[e(0.0, 0.0)], &DEFAULT_R_GRID).unwrap();
        assert_eq!(st.points[0].verdict, Verdict::ExactAtAllR);
        assert!(st.passed());
    }

    #[test]
    fn pseudo_spherical_and_equidistant_decrease() {
        let lp = LimitParams::Polar { k: 1.0, m: 0 };
        let st = convergence_study(ChartId::PseudoSpherical, &lp, &[e(1.0, 0.0)], &[50.0, 100.0, 200.0, 400.0]).unwrap();
        let p = &st.points[0];
        assert_eq!(p.verdict, Verdict::Pass);
        assert!(p.slope.unwrap() < -0.9, "{:?}", p.slope);
        let lp = LimitParams::Plane { k1: 0.6, k2: 0.8, eps: 1 };
        let st = convergence_study(ChartId::Equidistant, &lp, &[e(0.3, 0.4)], &[50.0, 100.0, 200.0]).unwrap();
        assert_eq!(st.points[0].verdict, Verdict::Pass);
    }

    #[test]
    fn horocyclic_small_k1_is_flagged() {
        let lp = LimitParams::HoLim { k1: 1e-5, k2: 0.8 };
        let st = convergence_study(ChartId::Horocyclic, &lp, &[e(0.3, 0.4)], &[25.0, 50.0, 100.0]).unwrap();
        assert!(matches!(st.points[0].verdict, Verdict::IllConditioned(_)), "{:?}", st.points[0].verdict);
        assert!(!st.passed());
    }

    #[test]
    fn study_rejects_short_grid() {
        let lp = LimitParams::Polar { k: 1.0, m: 0 };
        assert!(convergence_study(ChartId::PseudoSpherical, &lp, &[e(1.0, 0.0)], &[25.0, 50.0]).is_err());
    }

    #[test]
    fn slope_of_power_law() {
        let xs = [25.0, 50.0, 100.0, 200.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-1.5)).collect();
        assert_relative_eq!(fitted_slope(&xs, &ys).unwrap(), -1.5, max_relative = 1e-12);
    }

    #[test]
    fn stationary_phase_amplitude_is_half_the_ray_value() {
        assert!(kk_amplitude(0.6, 0.8, 20.0).is_err());
        let ratio = |r: f64| {
            let p = hp_ray_value(0.8, 0.6, r, 0.0).unwrap();
            let kk = kk_amplitude(0.8, 0.6, r).unwrap();
            (p.log_mag - kk.log_mag).exp()
        };
        let (r20, r40) = (ratio(20.0), ratio(40.0));
        assert!((r20 / KK_CORRECTION - 1.0).abs() <= 0.1, "{r20}");
        assert!((r40 / KK_CORRECTION - 1.0).abs() < (r20 / KK_CORRECTION - 1.0).abs());
    }

    #[test]
    fn ab_fit() {
        let f20 = hp_fit_ab(0.8, 0.6, 20.0, [0.0, 1.0]).unwrap();
        let f40 = hp_fit_ab(0.8, 0.6, 40.0, [0.0, 1.0]).unwrap();
        assert!(f20.ratio() < 0.1);
        assert!(f40.ratio() < f20.ratio());
        let r = hp_fit_ab(0.8, 0.6, 20.0, [0.0, 2.0 * PI / 0.8]);
        assert!(matches!(r, Err(Error::IllConditioned(_))));
    }
}
