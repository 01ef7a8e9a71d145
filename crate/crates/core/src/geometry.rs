//! Coordinate charts on the upper sheet of `u0² − u1² − u2² = R²`.
//!
//! Every chart is orthogonal, so the induced metric (signature inherited
//! from `G = diag(1, −1, −1)`) is `diag(−R² h1², −R² h2²)` and the
//! Laplace–Beltrami operator reduces to
//! `Δf = −(1/(R² h1 h2)) [∂1((h2/h1) ∂1 f) + ∂2((h1/h2) ∂2 f)]`.
//!
//! | chart | (ξ1, ξ2) | domain |
//! |---|---|---|
//! | pseudo_spherical | (τ, φ) | τ > 0, φ an angle |
//! | equidistant | (τ1, τ2) | ℝ² |
//! | horocyclic | (x̄, ȳ) | ȳ > 0 |
//! | semi_circular_parabolic | (ξ, η) | ξ, η > 0 |
//! | semi_circular_parabolic_rotated | (ξ, η) | ξ, η > 0 |
//! | elliptic_parabolic | (a, θ) | a > 0, \|θ\| < π/2 |
//! | hyperbolic_parabolic | (b, θ) | b > 0, 0 < θ < π |
//!
//! The apex τ = 0 of the pseudo-spherical chart is accepted by [`embed`] and
//! by basis evaluation, but not where the metric is needed.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartId {
    PseudoSpherical,
    Equidistant,
    Horocyclic,
    SemiCircularParabolic,
    SemiCircularParabolicRotated,
    EllipticParabolic,
    HyperbolicParabolic,
}

impl ChartId {
    pub const ALL: [ChartId; 7] = [
        ChartId::PseudoSpherical,
        ChartId::Equidistant,
        ChartId::Horocyclic,
        ChartId::SemiCircularParabolic,
        ChartId::SemiCircularParabolicRotated,
        ChartId::EllipticParabolic,
        ChartId::HyperbolicParabolic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChartId::PseudoSpherical => "pseudo_spherical",
            ChartId::Equidistant => "equidistant",
            ChartId::Horocyclic => "horocyclic",
            ChartId::SemiCircularParabolic => "semi_circular_parabolic",
            ChartId::SemiCircularParabolicRotated => "semi_circular_parabolic_rotated",
            ChartId::EllipticParabolic => "elliptic_parabolic",
            ChartId::HyperbolicParabolic => "hyperbolic_parabolic",
        }
    }

    pub fn coordinate_names(self) -> (&'static str, &'static str) {
        match self {
            ChartId::PseudoSpherical => ("tau", "phi"),
            ChartId::Equidistant => ("tau1", "tau2"),
            ChartId::Horocyclic => ("xbar", "ybar"),
            ChartId::SemiCircularParabolic | ChartId::SemiCircularParabolicRotated => ("xi", "eta"),
            ChartId::EllipticParabolic => ("a", "theta"),
            ChartId::HyperbolicParabolic => ("b", "theta"),
        }
    }

    /// Open-domain membership test.
    pub fn contains(self, xi1: f64, xi2: f64) -> bool {
        if !xi1.is_finite() || !xi2.is_finite() {
            return false;
        }
        match self {
            ChartId::PseudoSpherical => xi1 > 0.0,
            ChartId::Equidistant => true,
            ChartId::Horocyclic => xi2 > 0.0,
            ChartId::SemiCircularParabolic | ChartId::SemiCircularParabolicRotated => xi1 > 0.0 && xi2 > 0.0,
            ChartId::EllipticParabolic => xi1 > 0.0 && xi2.abs() < FRAC_PI_2,
            ChartId::HyperbolicParabolic => xi1 > 0.0 && xi2 > 0.0 && xi2 < PI,
        }
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChartId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ChartId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown chart '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub chart: ChartId,
    pub xi1: f64,
    pub xi2: f64,
}

impl ChartPoint {
    /// A point strictly inside the chart domain.
    pub fn new(chart: ChartId, xi1: f64, xi2: f64) -> Result<Self> {
        let p = ChartPoint { chart, xi1, xi2 };
        p.check_interior()?;
        Ok(p)
    }

    /// Like [`ChartPoint::new`] but also admits the pseudo-spherical apex τ = 0.
    pub fn new_closed(chart: ChartId, xi1: f64, xi2: f64) -> Result<Self> {
        let p = ChartPoint { chart, xi1, xi2 };
        p.check_embeddable()?;
        Ok(p)
    }

    pub fn check_interior(&self) -> Result<()> {
        if self.chart.contains(self.xi1, self.xi2) {
            Ok(())
        } else {
            let (n1, n2) = self.chart.coordinate_names();
            Err(Error::domain(format!(
                "({n1}, {n2}) = ({}, {}) is outside the {} chart",
                self.xi1, self.xi2, self.chart
            )))
        }
    }

    fn check_embeddable(&self) -> Result<()> {
        if self.chart == ChartId::PseudoSpherical && self.xi1 == 0.0 && self.xi2.is_finite() {
            return Ok(());
        }
        self.check_interior()
    }

    pub fn with(&self, xi1: f64, xi2: f64) -> ChartPoint {
        ChartPoint { chart: self.chart, xi1, xi2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmbientPoint {
    pub u0: f64,
    pub u1: f64,
    pub u2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EuclidPoint {
    pub x: f64,
    pub y: f64,
}

impl EuclidPoint {
    pub fn new(x: f64, y: f64) -> Self {
        EuclidPoint { x, y }
    }

    pub fn r(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Polar angle in `[0, 2π)`.
    pub fn phi(&self) -> f64 {
        let a = self.y.atan2(self.x);
        if a < 0.0 {
            a + 2.0 * PI
        } else {
            a
        }
    }

    /// Parabolic coordinates with `x = ½(ξ² − η²)`, `y = ξη`: `ξ = √(r+x) ≥ 0`
    /// and `η = ±√(r−x)` carrying the sign of `y`.
    pub fn parabolic(&self) -> (f64, f64) {
        let r = self.r();
        let xi = (r + self.x).max(0.0).sqrt();
        let eta = (r - self.x).max(0.0).sqrt();
        (xi, if self.y < 0.0 { -eta } else { eta })
    }
}

/// Signed induced metric and its density `√|det g|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metric2 {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub det: f64,
    pub density: f64,
}

impl Metric2 {
    pub fn from_components(g11: f64, g12: f64, g22: f64) -> Self {
        let det = g11 * g22 - g12 * g12;
        Metric2 { g11, g12, g22, det, density: det.abs().sqrt() }
    }

    /// `(g^{11}, g^{12}, g^{22})`.
    pub fn inverse(&self) -> (f64, f64, f64) {
        (self.g22 / self.det, -self.g12 / self.det, self.g11 / self.det)
    }
}

pub fn embed(p: &ChartPoint, radius: f64) -> Result<AmbientPoint> {
    check_radius(radius)?;
    p.check_embeddable()?;
    let (a, b) = (p.xi1, p.xi2);
    let (u0, u1, u2) = match p.chart {
        ChartId::PseudoSpherical => (a.cosh(), a.sinh() * b.cos(), a.sinh() * b.sin()),
        ChartId::Equidistant => (a.cosh() * b.cosh(), a.cosh() * b.sinh(), a.sinh()),
        ChartId::Horocyclic => {
            let s = a * a + b * b;
            ((s + 1.0) / (2.0 * b), (s - 1.0) / (2.0 * b), a / b)
        }
        ChartId::SemiCircularParabolic => scp_unrotated(a, b),
        ChartId::SemiCircularParabolicRotated => {
            let (u0, u1, u2) = scp_unrotated(a, b);
            (u0, FRAC_1_SQRT_2 * (u2 + u1), FRAC_1_SQRT_2 * (u2 - u1))
        }
        ChartId::EllipticParabolic => {
            let (ch, ct) = (a.cosh(), b.cos());
            let den = 2.0 * ch * ct;
            ((ch * ch + ct * ct) / den, (a.sinh().powi(2) - b.sin().powi(2)) / den, a.tanh() * b.tan())
        }
        ChartId::HyperbolicParabolic => {
            let (sh, st) = (a.sinh(), b.sin());
            let den = 2.0 * sh * st;
            (
                (a.cosh().powi(2) + b.cos().powi(2)) / den,
                (sh * sh - st * st) / den,
                1.0 / (b.tan() * a.tanh()),
            )
        }
    };
    Ok(AmbientPoint { u0: radius * u0, u1: radius * u1, u2: radius * u2 })
}

fn scp_unrotated(xi: f64, eta: f64) -> (f64, f64, f64) {
    let s = xi * xi + eta * eta;
    let den = 8.0 * xi * eta;
    ((s * s + 4.0) / den, (s * s - 4.0) / den, (eta * eta - xi * xi) / (2.0 * xi * eta))
}

fn check_radius(radius: f64) -> Result<()> {
    if radius > 0.0 && radius.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("radius R = {radius} must be positive")))
    }
}

/// `(u0² − u1² − u2² − R²)/R²`.
pub fn manifold_residual(p: &ChartPoint, radius: f64) -> Result<f64> {
    let u = embed(p, radius)?;
    let (a, b, c) = (u.u0 / radius, u.u1 / radius, u.u2 / radius);
    // (a − b)(a + b) loses less than a² − b² when both are large.
    Ok((a - b) * (a + b) - c * c - 1.0)
}

/// Squared scale factors `(h1², h2²)` with `g = diag(−R² h1², −R² h2²)`.
pub fn scale_factors_sq(p: &ChartPoint) -> Result<(f64, f64)> {
    p.check_interior()?;
    let (a, b) = (p.xi1, p.xi2);
    Ok(match p.chart {
        ChartId::PseudoSpherical => (1.0, a.sinh().powi(2)),
        ChartId::Equidistant => (1.0, a.cosh().powi(2)),
        ChartId::Horocyclic => {
            let h = 1.0 / (b * b);
            (h, h)
        }
        ChartId::SemiCircularParabolic | ChartId::SemiCircularParabolicRotated => {
            let h = (a * a + b * b) / (a * a * b * b);
            (h, h)
        }
        ChartId::EllipticParabolic => {
            let h = (b.sin().powi(2) + a.sinh().powi(2)) / (b.cos().powi(2) * a.cosh().powi(2));
            (h, h)
        }
        ChartId::HyperbolicParabolic => {
            let h = (a.sinh().powi(2) + b.sin().powi(2)) / (b.sin().powi(2) * a.sinh().powi(2));
            (h, h)
        }
    })
}

pub fn metric(p: &ChartPoint, radius: f64) -> Result<Metric2> {
    check_radius(radius)?;
    let (h1, h2) = scale_factors_sq(p)?;
    let r2 = radius * radius;
    Ok(Metric2::from_components(-r2 * h1, 0.0, -r2 * h2))
}

pub fn metric_density(p: &ChartPoint, radius: f64) -> Result<f64> {
    Ok(metric(p, radius)?.density)
}

/// Coefficients `(c11, c1, c22)` with
/// `Δ_LB f = −(1/R²) [c11 ∂1² f + c1 ∂1 f + c22 ∂2² f]`, from the closed-form
/// scale factors and their hand-computed derivatives.
pub fn lb_coefficients(p: &ChartPoint) -> Result<(f64, f64, f64)> {
    let (h1, h2) = scale_factors_sq(p)?;
    Ok(match p.chart {
        ChartId::PseudoSpherical => (1.0, 1.0 / p.xi1.tanh(), 1.0 / h2),
        ChartId::Equidistant => (1.0, p.xi1.tanh(), 1.0 / h2),
        // Conformal charts: no first-order term.
        _ => (1.0 / h1, 0.0, 1.0 / h2),
    })
}

/// Pullback `G_{μν} ∂u^μ/∂ξ^i ∂u^ν/∂ξ^k` with a fourth-order central-difference
/// Jacobian of [`embed`]; an oracle for [`metric`].
pub fn metric_fd_pullback(p: &ChartPoint, radius: f64) -> Result<Metric2> {
    p.check_interior()?;
    let jac = |k: usize| -> Result<[f64; 3]> {
        let x = if k == 0 { p.xi1 } else { p.xi2 };
        let mut h = 1e-3 * x.abs().max(1.0);
        // Keep the stencil well inside the domain: the fifth-derivative error
        // scales like (h/distance-to-edge)⁴.
        while !stencil_ok(p, k, 200.0 * h) {
            h /= 4.0;
            if h < 1e-12 {
                return Err(Error::domain("FD stencil does not fit inside the chart"));
            }
        }
        let at = |d: f64| {
            let q = if k == 0 { p.with(p.xi1 + d, p.xi2) } else { p.with(p.xi1, p.xi2 + d) };
            embed(&q, radius)
        };
        let (m2, m1, p1, p2) = (at(-2.0 * h)?, at(-h)?, at(h)?, at(2.0 * h)?);
        let d = |f: fn(&AmbientPoint) -> f64| (f(&m2) - 8.0 * f(&m1) + 8.0 * f(&p1) - f(&p2)) / (12.0 * h);
        Ok([d(|u| u.u0), d(|u| u.u1), d(|u| u.u2)])
    };
    let (j1, j2) = (jac(0)?, jac(1)?);
    let pull = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] - a[1] * b[1] - a[2] * b[2];
    Ok(Metric2::from_components(pull(&j1, &j1), pull(&j1, &j2), pull(&j2, &j2)))
}

fn stencil_ok(p: &ChartPoint, k: usize, h: f64) -> bool {
    [-1.0, 1.0].iter().all(|s| {
        if k == 0 {
            p.chart.contains(p.xi1 + s * h, p.xi2)
        } else {
            p.chart.contains(p.xi1, p.xi2 + s * h)
        }
    })
}

fn too_small(reason: impl Into<String>, min_radius: f64) -> Error {
    Error::RadiusTooSmall { reason: reason.into(), min_radius }
}

/// The chart point representing the flat point `e` at radius `R`, using the
/// leading-order substitutions of each contraction.
pub fn chart_point_for_limit(chart: ChartId, e: &EuclidPoint, radius: f64) -> Result<ChartPoint> {
    check_radius(radius)?;
    let (x, y) = (e.x, e.y);
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::NonFinite("Euclidean point".into()));
    }
    let point = match chart {
        ChartId::PseudoSpherical => ChartPoint { chart, xi1: e.r() / radius, xi2: e.phi() },
        ChartId::Equidistant => ChartPoint { chart, xi1: y / radius, xi2: x / radius },
        ChartId::Horocyclic => {
            let yb = 1.0 + x / radius;
            if yb <= 0.0 {
                return Err(too_small(format!("horocyclic ȳ = 1 + x/R = {yb} must be positive"), -x));
            }
            ChartPoint { chart, xi1: y / radius, xi2: yb }
        }
        ChartId::SemiCircularParabolic => {
            let eta2 = 1.0 + (x + y) / radius;
            let xi2 = 1.0 + (x - y) / radius;
            if eta2 <= 0.0 || xi2 <= 0.0 {
                return Err(too_small(
                    format!("semi-circular-parabolic ξ² = {xi2}, η² = {eta2} must be positive"),
                    (-(x + y)).max(-(x - y)),
                ));
            }
            ChartPoint { chart, xi1: xi2.sqrt(), xi2: eta2.sqrt() }
        }
        ChartId::SemiCircularParabolicRotated => {
            let eta2 = 1.0 + SQRT_2 * x / radius;
            let xi2 = 1.0 + SQRT_2 * y / radius;
            if eta2 <= 0.0 || xi2 <= 0.0 {
                return Err(too_small(
                    format!("rotated semi-circular-parabolic ξ² = {xi2}, η² = {eta2} must be positive"),
                    (-SQRT_2 * x).max(-SQRT_2 * y),
                ));
            }
            ChartPoint { chart, xi1: xi2.sqrt(), xi2: eta2.sqrt() }
        }
        ChartId::EllipticParabolic => {
            let (xi, eta) = e.parabolic();
            if xi == 0.0 {
                return Err(Error::domain("elliptic-parabolic limit needs ξ = √(r+x) > 0 (a = 0 is the chart edge)"));
            }
            let cos2 = 1.0 - eta * eta / radius;
            if cos2 <= 0.0 {
                return Err(too_small(format!("elliptic-parabolic cos²θ = 1 − η²/R = {cos2} must be positive"), eta * eta));
            }
            let theta = cos2.sqrt().acos().copysign(eta);
            let a = (1.0 + xi * xi / radius).sqrt().acosh();
            ChartPoint { chart, xi1: a, xi2: theta }
        }
        ChartId::HyperbolicParabolic => {
            if y == 0.0 {
                return Err(Error::domain("hyperbolic-parabolic limit: y = 0 gives cos²θ = 0 (θ = π/2 edge)"));
            }
            let cosh2 = 2.0 * (1.0 + x / radius);
            let ct = y / (SQRT_2 * radius);
            if cosh2 <= 1.0 || ct.abs() >= 1.0 {
                return Err(too_small(
                    format!("hyperbolic-parabolic cosh²b = {cosh2} must exceed 1 and |cos θ| = {} be below 1", ct.abs()),
                    (-2.0 * x).max(y.abs() * FRAC_1_SQRT_2),
                ));
            }
            ChartPoint { chart, xi1: cosh2.sqrt().acosh(), xi2: ct.acos() }
        }
    };
    if chart != ChartId::PseudoSpherical {
        point.check_interior()?;
    }
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn pt(chart: ChartId, a: f64, b: f64) -> ChartPoint {
        ChartPoint::new(chart, a, b).unwrap()
    }

    #[test]
    fn reference_embeddings() {
        let apex = ChartPoint::new_closed(ChartId::PseudoSpherical, 0.0, 0.0).unwrap();
        assert_eq!(embed(&apex, 2.0).unwrap(), AmbientPoint { u0: 2.0, u1: 0.0, u2: 0.0 });
        let u = embed(&pt(ChartId::Horocyclic, 0.0, 1.0), 5.0).unwrap();
        assert_eq!((u.u0, u.u1, u.u2), (5.0, 0.0, 0.0));
        let u = embed(&pt(ChartId::SemiCircularParabolic, 1.0, 1.0), 3.0).unwrap();
        assert_eq!((u.u0, u.u1, u.u2), (3.0, 0.0, 0.0));
    }

    #[test]
    fn residual_examples() {
        for (c, a, b, r) in [
            (ChartId::PseudoSpherical, 1.3, 2.1, 7.0),
            (ChartId::EllipticParabolic, 0.9, 0.4, 1.0),
            (ChartId::HyperbolicParabolic, 0.5, 1.0, 10.0),
        ] {
            assert!(manifold_residual(&pt(c, a, b), r).unwrap().abs() <= 1e-12);
        }
    }

    #[test]
    fn metric_examples() {
        let m = metric(&pt(ChartId::PseudoSpherical, 1.0, 0.3), 2.0).unwrap();
        assert_relative_eq!(m.g11, -4.0);
        assert_relative_eq!(m.density, 4.0 * 1f64.sinh(), max_relative = 1e-15);
        assert_relative_eq!(metric_density(&pt(ChartId::Horocyclic, 0.3, 2.0), 1.0).unwrap(), 0.25);
        let m = metric(&pt(ChartId::Equidistant, 0.7, -0.2), 3.0).unwrap();
        assert_relative_eq!(m.g22, -9.0 * 0.7f64.cosh().powi(2), max_relative = 1e-15);
    }

    #[test]
    fn domains_are_open() {
        assert!(ChartPoint::new(ChartId::Horocyclic, 0.0, 0.0).is_err());
        assert!(ChartPoint::new(ChartId::SemiCircularParabolic, 0.0, 1.0).is_err());
        assert!(ChartPoint::new(ChartId::HyperbolicParabolic, 0.3, PI).is_err());
        assert!(ChartPoint::new(ChartId::EllipticParabolic, 0.3, FRAC_PI_2).is_err());
        assert!(ChartPoint::new(ChartId::PseudoSpherical, 0.0, 1.0).is_err());
        assert!(metric(&ChartPoint { chart: ChartId::PseudoSpherical, xi1: 0.0, xi2: 0.0 }, 1.0).is_err());
        let bad = ChartPoint { chart: ChartId::Horocyclic, xi1: 0.0, xi2: -1.0 };
        assert!(matches!(embed(&bad, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn chart_ids_round_trip() {
        for c in ChartId::ALL {
            assert_eq!(c.as_str().parse::<ChartId>().unwrap(), c);
        }
        assert!("spherical".parse::<ChartId>().is_err());
    }

    #[test]
    fn limit_points() {
        let e = EuclidPoint::new(0.6, 0.8);
        let p = chart_point_for_limit(ChartId::PseudoSpherical, &e, 100.0).unwrap();
        assert_relative_eq!(p.xi1, 0.01, max_relative = 1e-15);
        assert_relative_eq!(p.xi2, e.phi());
        let p = chart_point_for_limit(ChartId::Horocyclic, &EuclidPoint::new(0.5, 0.2), 10.0).unwrap();
        assert_relative_eq!(p.xi1, 0.02, max_relative = 1e-15);
        assert_relative_eq!(p.xi2, 1.05, max_relative = 1e-15);
        assert!(matches!(
            chart_point_for_limit(ChartId::HyperbolicParabolic, &EuclidPoint::new(0.0, 0.0), 50.0),
            Err(Error::Domain(_))
        ));
        match chart_point_for_limit(ChartId::Horocyclic, &EuclidPoint::new(-3.0, 0.0), 2.0) {
            Err(Error::RadiusTooSmall { min_radius, .. }) => assert_eq!(min_radius, 3.0),
            other => panic!("{other:?}"),
        }
        match chart_point_for_limit(ChartId::EllipticParabolic, &EuclidPoint::new(-1.0, 1.0), 1.0) {
            Err(Error::RadiusTooSmall { min_radius, .. }) => assert!(min_radius > 1.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parabolic_view_is_exact() {
        for (x, y) in [(0.3, 0.4), (-1.0, 0.2), (2.0, -0.5)] {
            let e = EuclidPoint::new(x, y);
            let (xi, eta) = e.parabolic();
            assert_relative_eq!(0.5 * (xi * xi - eta * eta), x, epsilon = 1e-15);
            assert_relative_eq!(xi * eta, y, epsilon = 1e-15);
        }
    }

    #[test]
    fn rotated_chart_is_a_quarter_turn() {
        for (xi, eta) in [(0.7, 1.3), (1.1, 0.4), (2.0, 2.5)] {
            let u = embed(&pt(ChartId::SemiCircularParabolic, xi, eta), 3.0).unwrap();
            let v = embed(&pt(ChartId::SemiCircularParabolicRotated, xi, eta), 3.0).unwrap();
            let (c, s) = (FRAC_1_SQRT_2, FRAC_1_SQRT_2);
            assert_relative_eq!(v.u0, u.u0, max_relative = 1e-15);
            assert!((v.u1 - (c * u.u1 + s * u.u2)).abs() <= 1e-12 * u.u0);
            assert!((v.u2 - (-s * u.u1 + c * u.u2)).abs() <= 1e-12 * u.u0);
        }
    }

    #[test]
    fn measure_density_contracts() {
        for r in [0.5, 1.0, 2.0] {
            let err = |big_r: f64| {
                let p = chart_point_for_limit(ChartId::PseudoSpherical, &EuclidPoint::new(r, 0.0), big_r).unwrap();
                (metric_density(&p, 1.0).unwrap() * big_r - r).abs()
            };
            assert!(err(100.0) < err(10.0));
        }
    }

    #[test]
    fn limit_embedding_converges() {
        let e = EuclidPoint::new(0.3, 0.4);
        for chart in ChartId::ALL {
            let err = |big_r: f64| {
                let u = embed(&chart_point_for_limit(chart, &e, big_r).unwrap(), big_r).unwrap();
                (u.u0 - big_r).abs() + (u.u1.hypot(u.u2) - e.r()).abs()
            };
            let errs: Vec<f64> = [25.0, 50.0, 100.0, 200.0].iter().map(|&r| err(r)).collect();
            assert!(errs.windows(2).all(|w| w[1] < w[0]), "{chart}: {errs:?}");
        }
    }

    pub(crate) fn sample(chart: ChartId, s: f64, t: f64) -> ChartPoint {
        // Map (s, t) ∈ [0,1)² to a representative box inside each chart.
        let (a, b) = match chart {
            ChartId::PseudoSpherical => (0.05 + 2.5 * s, 2.0 * PI * t),
            ChartId::Equidistant => (-2.0 + 4.0 * s, -2.0 + 4.0 * t),
            ChartId::Horocyclic => (-3.0 + 6.0 * s, 0.1 + 3.0 * t),
            ChartId::SemiCircularParabolic | ChartId::SemiCircularParabolicRotated => (0.1 + 2.5 * s, 0.1 + 2.5 * t),
            ChartId::EllipticParabolic => (0.05 + 2.0 * s, -1.4 + 2.8 * t),
            ChartId::HyperbolicParabolic => (0.05 + 2.0 * s, 0.1 + 2.9 * t),
        };
        pt(chart, a, b)
    }

    proptest! {
        #[test]
        fn manifold_identity(ci in 0usize..7, s in 0.0..1.0f64, t in 0.0..1.0f64, lr in -1.0..3.0f64) {
            let p = sample(ChartId::ALL[ci], s, t);
            prop_assert!(manifold_residual(&p, 10f64.powf(lr)).unwrap().abs() <= 1e-12);
            prop_assert!(embed(&p, 1.0).unwrap().u0 > 0.0);
        }

        #[test]
        fn metric_matches_pullback(ci in 0usize..7, s in 0.0..1.0f64, t in 0.0..1.0f64, lr in -1.0..3.0f64) {
            let p = sample(ChartId::ALL[ci], s, t);
            let r = 10f64.powf(lr);
            let m = metric(&p, r).unwrap();
            let f = metric_fd_pullback(&p, r).unwrap();
            let scale = m.g11.abs().max(m.g22.abs());
            prop_assert!((m.g11 - f.g11).abs() <= 1e-7 * scale);
            prop_assert!((m.g22 - f.g22).abs() <= 1e-7 * scale);
            prop_assert!(f.g12.abs() <= 1e-7 * scale);
            prop_assert!(m.g11 < 0.0 && m.det > 0.0 && m.density > 0.0);
        }
    }
}
