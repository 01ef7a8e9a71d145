//! Globally adaptive Gauss–Kronrod (10/21) quadrature for complex integrands.
//!
//! The caller supplies initial breakpoints, which is how the oscillatory
//! integrands in `specfun` get panels no wider than their local period.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::ComplexVal;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

// Gauss weights, paired with the odd entries of XGK.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Cap on the number of panels held at once.
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 0.0,
            rel_tol: 1e-12,
            max_panels: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: ComplexVal,
    pub error: f64,
    /// Integral of |f|, used by callers to judge cancellation.
    pub l1: f64,
    pub evals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: ComplexVal,
    error: f64,
    l1: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk21<F: Fn(f64) -> ComplexVal>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[10];
    let mut gauss = ComplexVal::new(0.0, 0.0);
    let mut abs = fc.norm() * WGK[10];
    let mut fv = [(ComplexVal::new(0.0, 0.0), ComplexVal::new(0.0, 0.0)); 10];
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv[j] = (f1, f2);
        kron += (f1 + f2) * WGK[j];
        abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut asc = (fc - mean).norm() * WGK[10];
    for j in 0..10 {
        asc += ((fv[j].0 - mean).norm() + (fv[j].1 - mean).norm()) * WGK[j];
    }
    let h_abs = h.abs();
    let resasc = asc * h_abs;
    let resabs = abs * h_abs;
    let mut err = ((kron - gauss) * h).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Panel {
        a,
        b,
        value: kron * h,
        error: err,
        l1: resabs,
    }
}

/// Integrate `f` over `[points[0], points[last]]`, starting from one panel per
/// consecutive pair of breakpoints.
pub fn integrate<F>(f: F, points: &[f64], opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> ComplexVal,
{
    if points.len() < 2 {
        return Err(Error::domain("quadrature needs at least two breakpoints"));
    }
    let mut heap = BinaryHeap::new();
    let mut evals = 0usize;
    for w in points.windows(2) {
        if w[1] != w[0] {
            heap.push(gk21(&f, w[0], w[1]));
            evals += 21;
        }
    }
    loop {
        let (value, error, l1) = heap.iter().fold(
            (ComplexVal::new(0.0, 0.0), 0.0, 0.0),
            |(v, e, l), p| (v + p.value, e + p.error, l + p.l1),
        );
        if !value.re.is_finite() || !value.im.is_finite() || !error.is_finite() {
            return Err(Error::NonFinite("quadrature sum".into()));
        }
        let tol = opts.abs_tol.max(opts.rel_tol * value.norm());
        // Below ~100 ε ∫|f| the estimate is roundoff, not truncation.
        let floor = 100.0 * f64::EPSILON * l1;
        if error <= tol.max(floor) || heap.is_empty() {
            return Ok(QuadResult { value, error, l1, evals });
        }
        if heap.len() >= opts.max_panels {
            return Err(Error::Quadrature { estimate: error, tolerance: tol });
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // Panel can no longer be split in floating point.
            return Err(Error::Quadrature { estimate: error, tolerance: tol });
        }
        heap.push(gk21(&f, worst.a, mid));
        heap.push(gk21(&f, mid, worst.b));
        evals += 42;
    }
}

/// Breakpoints `a = t0 < … < tn = b` with spacing at most `width(t)`, where
/// `width` is evaluated at the left end of each panel.
pub fn panels_by_width<W: Fn(f64) -> f64>(a: f64, b: f64, width: W, max_panels: usize) -> Vec<f64> {
    let mut pts = vec![a];
    let mut t = a;
    while t < b && pts.len() < max_panels {
        let w = width(t).max((b - a) / max_panels as f64);
        t = (t + w).min(b);
        pts.push(t);
    }
    if *pts.last().unwrap() < b {
        pts.push(b);
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|t| ComplexVal::new(t.powi(5), t * t), &[0.0, 2.0], &QuadOptions::default()).unwrap();
        assert!((r.value.re - 64.0 / 6.0).abs() < 1e-13);
        assert!((r.value.im - 8.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_with_panels() {
        // ∫₀^π cos(40 t) e^{-t} dt = (1 - e^{-π}·cos(40π)) / (1 + 1600)
        let pts = panels_by_width(0.0, PI, |_| PI / 40.0, 1000);
        let r = integrate(|t| ComplexVal::new((40.0 * t).cos() * (-t).exp(), 0.0), &pts, &QuadOptions::default()).unwrap();
        let exact = (1.0 - (-PI).exp()) / 1601.0;
        assert!((r.value.re - exact).abs() < 1e-14, "{} vs {}", r.value.re, exact);
    }

    #[test]
    fn bessel_integral_representation() {
        // J_1(1) = (1/π) ∫₀^π cos(θ − sin θ) dθ
        let r = integrate(|t| ComplexVal::new((t - t.sin()).cos(), 0.0), &[0.0, PI], &QuadOptions::default()).unwrap();
        assert!((r.value.re / PI - 0.440_050_585_744_933_5).abs() < 1e-14);
    }

    #[test]
    fn singular_integrand_reports_failure() {
        let opts = QuadOptions { max_panels: 50, ..Default::default() };
        let r = integrate(|t| ComplexVal::new(1.0 / (t * t), 0.0), &[0.0, 1.0], &opts);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
        let r = integrate(|t| ComplexVal::new(1.0 / t, 0.0), &[-1.0, 1.0], &opts);
        assert!(matches!(r, Err(Error::NonFinite(_))));
    }
}
