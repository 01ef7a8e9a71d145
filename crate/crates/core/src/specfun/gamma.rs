//! Complex log-gamma by the Lanczos approximation (g = 607/128, 15 terms),
//! with reflection for `Re z < ½`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::logc::LogComplex;
use crate::ComplexVal;

const LANCZOS_G: f64 = 607.0 / 128.0;

#[allow(clippy::excessive_precision)]
const LANCZOS_C: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Returns `Some(n)` when `z` is the nonpositive integer `n`.
fn pole_at(z: ComplexVal) -> Option<i64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        Some(z.re as i64)
    } else {
        None
    }
}

fn lanczos_ln(z: ComplexVal) -> ComplexVal {
    let w = z - 1.0;
    let mut s = ComplexVal::new(LANCZOS_C[0], 0.0);
    for (k, c) in LANCZOS_C.iter().enumerate().skip(1) {
        s += *c / (w + k as f64);
    }
    let t = w + LANCZOS_G + 0.5;
    HALF_LN_2PI + (w + 0.5) * t.ln() - t + s.ln()
}

/// `ln sin(πz)` without overflow for large `|Im z|` (any branch; only the
/// value mod 2πi is used).
fn ln_sin_pi(z: ComplexVal) -> ComplexVal {
    if z.im.abs() < 20.0 {
        return (z * PI).sin().ln();
    }
    // sin(πz) = e^{∓iπz} (±(1 − e^{±2iπz}))/(2i) with the small exponential on the right.
    let i = ComplexVal::i();
    if z.im > 0.0 {
        -i * PI * z + ((ComplexVal::new(1.0, 0.0) - (2.0 * i * PI * z).exp()) / (2.0 * i)).ln() + i * PI
    } else {
        i * PI * z + ((ComplexVal::new(1.0, 0.0) - (-2.0 * i * PI * z).exp()) / (2.0 * i)).ln()
    }
}

/// `ln Γ(z)` as a log-magnitude/phase pair.
pub fn log_gamma_complex(z: ComplexVal) -> Result<LogComplex> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite(format!("gamma argument {z}")));
    }
    if let Some(n) = pole_at(z) {
        return Err(Error::Pole(n));
    }
    if z.re < 0.5 {
        // Γ(z) = π / (sin(πz) Γ(1−z))
        let l = ComplexVal::new(PI.ln(), 0.0) - ln_sin_pi(z) - lanczos_ln(1.0 - z);
        Ok(LogComplex::exp(l))
    } else {
        Ok(LogComplex::exp(lanczos_ln(z)))
    }
}

/// `Γ(z)` in linear form; overflow past `e^700` is an error.
pub fn gamma_complex(z: ComplexVal) -> Result<ComplexVal> {
    log_gamma_complex(z)?.to_complex()
}

/// `1/Γ(z)`, with the exact zeros at the poles of Γ.
pub fn rgamma_log(z: ComplexVal) -> Result<LogComplex> {
    match log_gamma_complex(z) {
        Ok(l) => Ok(l.inv()),
        Err(Error::Pole(_)) => Ok(LogComplex::ZERO),
        Err(e) => Err(e),
    }
}

/// `z^{α−β}`, the leading term of `Γ(z+α)/Γ(z+β)` for large `|z|` away from
/// the negative real axis.
pub fn gamma_ratio_asym(z: ComplexVal, alpha: ComplexVal, beta: ComplexVal) -> Result<ComplexVal> {
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::domain("gamma_ratio_asym: z on the branch cut (−∞, 0]"));
    }
    Ok((z.ln() * (alpha - beta)).exp())
}

/// Exact `Γ(z+α)/Γ(z+β)` through log-gamma.
pub fn gamma_ratio(z: ComplexVal, alpha: ComplexVal, beta: ComplexVal) -> Result<LogComplex> {
    Ok(log_gamma_complex(z + alpha)? / log_gamma_complex(z + beta)?)
}
