//! Maclaurin series for ₂F₁, ₀F₁ and ₁F₁ with certified tail bounds.

use serde::Serialize;

use super::gamma::rgamma_log;
use crate::error::{Error, Result};
use crate::ComplexVal;

/// Largest |z| accepted by the ₂F₁ series.
pub const HYP2F1_Z_MAX: f64 = 0.75;

#[derive(Debug, Clone, Copy)]
pub struct SeriesOptions {
    /// Relative tolerance on the sum.
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            tol: 1e-12,
            max_terms: 10_000,
        }
    }
}

/// Value of a series together with how it was obtained. `tail_bound` is an
/// absolute bound on the neglected terms; `converged` means it is at most
/// `tol · |value|`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeriesReport {
    pub value: ComplexVal,
    pub terms_used: usize,
    pub tail_bound: f64,
    pub converged: bool,
}

fn is_nonpositive_int(c: ComplexVal) -> bool {
    c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round()
}

/// Generic hypergeometric summation. `ratio(n)` is t_{n+1}/t_n and
/// `bound(n)` must dominate |ratio(m)| for every m ≥ n (or be ≥ 1 if no
/// such bound is known yet).
fn sum_series<R, B>(
    what: &'static str,
    first: ComplexVal,
    ratio: R,
    bound: B,
    opts: &SeriesOptions,
) -> Result<SeriesReport>
where
    R: Fn(usize) -> ComplexVal,
    B: Fn(usize) -> f64,
{
    let mut term = first;
    let mut sum = first;
    let mut tail = f64::INFINITY;
    for n in 0..opts.max_terms {
        term *= ratio(n);
        sum += term;
        if term.re == 0.0 && term.im == 0.0 {
            // Terminating series.
            return Ok(SeriesReport { value: sum, terms_used: n + 2, tail_bound: 0.0, converged: true });
        }
        let q = bound(n + 1);
        if q < 1.0 {
            tail = term.norm() * q / (1.0 - q);
            if tail <= opts.tol * sum.norm() {
                return Ok(SeriesReport { value: sum, terms_used: n + 2, tail_bound: tail, converged: true });
            }
        }
        if !sum.re.is_finite() || !sum.im.is_finite() {
            return Err(Error::NonFinite(format!("{what} partial sum")));
        }
    }
    Err(Error::NoConvergence { what, terms: opts.max_terms, tail_bound: tail })
}

pub fn hyp2f1(a: ComplexVal, b: ComplexVal, c: ComplexVal, z: ComplexVal) -> Result<SeriesReport> {
    hyp2f1_with(a, b, c, z, &SeriesOptions::default())
}

pub fn hyp2f1_with(
    a: ComplexVal,
    b: ComplexVal,
    c: ComplexVal,
    z: ComplexVal,
    opts: &SeriesOptions,
) -> Result<SeriesReport> {
    if is_nonpositive_int(c) {
        return Err(Error::Pole(c.re as i64));
    }
    check_z(z)?;
    sum_2f1(a, b, c, z, ComplexVal::new(1.0, 0.0), 0, opts)
}

fn check_z(z: ComplexVal) -> Result<()> {
    if !(z.norm() <= HYP2F1_Z_MAX) {
        return Err(Error::domain(format!(
            "hyp2f1: |z| = {} exceeds the series cap {HYP2F1_Z_MAX}",
            z.norm()
        )));
    }
    Ok(())
}

// Sum Σ_{n ≥ n0} t_n with t_{n0} = first and the ₂F₁ term ratio.
fn sum_2f1(
    a: ComplexVal,
    b: ComplexVal,
    c: ComplexVal,
    z: ComplexVal,
    first: ComplexVal,
    n0: usize,
    opts: &SeriesOptions,
) -> Result<SeriesReport> {
    let zn = z.norm();
    let am1 = (a - 1.0).norm();
    let bmc = (b - c).norm();
    let cn = c.norm();
    sum_series(
        "hyp2f1",
        first,
        |n| {
            let m = (n + n0) as f64;
            (a + m) * (b + m) / ((c + m) * (m + 1.0)) * z
        },
        |n| {
            let m = (n + n0) as f64;
            if m <= cn {
                return f64::INFINITY;
            }
            zn * (1.0 + am1 / (m + 1.0)) * (1.0 + bmc / (m - cn))
        },
        opts,
    )
}

/// ₂F₁(a, b; c; z)/Γ(c), finite for every c.
pub fn hyp2f1_regularized(a: ComplexVal, b: ComplexVal, c: ComplexVal, z: ComplexVal) -> Result<SeriesReport> {
    let opts = SeriesOptions::default();
    check_z(z)?;
    if !is_nonpositive_int(c) {
        let r = rgamma_log(c)?.to_complex()?;
        let mut rep = sum_2f1(a, b, c, z, ComplexVal::new(1.0, 0.0), 0, &opts)?;
        rep.value *= r;
        rep.tail_bound *= r.norm();
        return Ok(rep);
    }
    // c = −k: terms n ≤ k vanish; the series starts at n0 = k+1 with
    // t_{n0} = (a)_{n0} (b)_{n0} z^{n0} / n0!.
    let n0 = (1.0 - c.re) as usize;
    let mut first = ComplexVal::new(1.0, 0.0);
    for j in 0..n0 {
        let jf = j as f64;
        first *= (a + jf) * (b + jf) * z / (jf + 1.0);
    }
    if first.re == 0.0 && first.im == 0.0 {
        return Ok(SeriesReport { value: first, terms_used: n0, tail_bound: 0.0, converged: true });
    }
    sum_2f1(a, b, c, z, first, n0, &opts)
}

pub fn hyp0f1(c: ComplexVal, z: ComplexVal) -> Result<SeriesReport> {
    hyp0f1_with(c, z, &SeriesOptions::default())
}

pub fn hyp0f1_with(c: ComplexVal, z: ComplexVal, opts: &SeriesOptions) -> Result<SeriesReport> {
    if is_nonpositive_int(c) {
        return Err(Error::Pole(c.re as i64));
    }
    let zn = z.norm();
    let cn = c.norm();
    sum_series(
        "hyp0f1",
        ComplexVal::new(1.0, 0.0),
        |n| {
            let m = n as f64;
            z / ((c + m) * (m + 1.0))
        },
        |n| {
            let m = n as f64;
            if m <= cn {
                f64::INFINITY
            } else {
                zn / ((m - cn) * (m + 1.0))
            }
        },
        opts,
    )
}

pub fn hyp1f1(a: ComplexVal, c: ComplexVal, z: ComplexVal) -> Result<SeriesReport> {
    hyp1f1_with(a, c, z, &SeriesOptions::default())
}

pub fn hyp1f1_with(a: ComplexVal, c: ComplexVal, z: ComplexVal, opts: &SeriesOptions) -> Result<SeriesReport> {
    if is_nonpositive_int(c) {
        return Err(Error::Pole(c.re as i64));
    }
    let zn = z.norm();
    let amc = (a - c).norm();
    let cn = c.norm();
    sum_series(
        "hyp1f1",
        ComplexVal::new(1.0, 0.0),
        |n| {
            let m = n as f64;
            (a + m) / ((c + m) * (m + 1.0)) * z
        },
        |n| {
            let m = n as f64;
            if m <= cn {
                f64::INFINITY
            } else {
                zn * (1.0 + amc / (m - cn)) / (m + 1.0)
            }
        },
        opts,
    )
}
