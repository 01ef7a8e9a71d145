//! Large-parameter formulas for the Macdonald and imaginary-order Bessel
//! functions, kept as ordinary operations so their accuracy can be measured.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::ComplexVal;

/// Default lower bound on `x` for [`asym_macdonald_k`].
pub const ASYM_K_X_MIN: f64 = 5.0;

/// `K_{iν}(x) ∼ √(2π)/(ν²−x²)^{1/4} e^{−πν/2} sin(π/4 − √(ν²−x²) + ν cosh⁻¹(ν/x))`
/// for `ν > x ≫ 1`.
pub fn asym_macdonald_k(nu: f64, x: f64) -> Result<f64> {
    asym_macdonald_k_with(nu, x, ASYM_K_X_MIN)
}

pub fn asym_macdonald_k_with(nu: f64, x: f64, x_min: f64) -> Result<f64> {
    Ok(asym_macdonald_k_scaled_with(nu, x, x_min)? * (-PI * nu / 2.0).exp())
}

/// The same formula with `e^{−πν/2}` divided out.
pub fn asym_macdonald_k_scaled(nu: f64, x: f64) -> Result<f64> {
    asym_macdonald_k_scaled_with(nu, x, ASYM_K_X_MIN)
}

pub fn asym_macdonald_k_scaled_with(nu: f64, x: f64, x_min: f64) -> Result<f64> {
    if !(x > x_min) || !(nu > x) {
        return Err(Error::domain(format!(
            "asym_macdonald_k: needs ν > x > {x_min}, got ν = {nu}, x = {x}"
        )));
    }
    let w = (nu * nu - x * x).sqrt();
    let acosh = (nu / x + ((nu / x).powi(2) - 1.0).sqrt()).ln();
    Ok((2.0 * PI).sqrt() / w.sqrt() * (FRAC_PI_4 - w + nu * acosh).sin())
}

/// Accuracy of [`asym_macdonald_k_scaled`] against the quadrature value, as
/// `(pointwise, envelope)`. The pointwise figure is `|asym − K|/|K|`; the
/// envelope figure is `√(Δ² + (Δ′·x/w)²)/A` with `Δ = asym − K`, `w = √(ν²−x²)`
/// and `A = √(2π/w)` the amplitude of the oscillation. Unlike the pointwise
/// figure it does not blow up near zeros of `K`.
pub fn asym_macdonald_k_errors(nu: f64, x: f64) -> Result<(f64, f64)> {
    use super::macdonald::macdonald_k_scaled;
    let delta = |xx: f64| -> Result<f64> { Ok(asym_macdonald_k_scaled(nu, xx)? - macdonald_k_scaled(nu, xx)?) };
    let exact = macdonald_k_scaled(nu, x)?;
    let d = delta(x)?;
    let h = 1e-3 * x;
    let dd = (delta(x + h)? - delta(x - h)?) / (2.0 * h);
    let w = (nu * nu - x * x).sqrt();
    let amp = (2.0 * PI / w).sqrt();
    let env = (d * d + (dd * x / w).powi(2)).sqrt() / amp;
    Ok((d.abs() / exact.abs(), env))
}

/// `J_{ip}(z) ∼ (1/2π) √(2π)/(p²+z²)^{1/4} exp(i√(p²+z²) − ip sinh⁻¹(p/z) − iπ/4) e^{pπ/2}`.
pub fn asym_bessel_j_imag(p: f64, z: f64) -> Result<ComplexVal> {
    Ok(asym_bessel_j_imag_scaled(p, z)? * (PI * p / 2.0).exp())
}

/// [`asym_bessel_j_imag`] with `e^{pπ/2}` divided out.
pub fn asym_bessel_j_imag_scaled(p: f64, z: f64) -> Result<ComplexVal> {
    if !(p > 0.0) || !(z > 0.0) {
        return Err(Error::domain(format!("asym_bessel_j_imag: needs p, z > 0, got p = {p}, z = {z}")));
    }
    let w = (p * p + z * z).sqrt();
    let asinh = (p / z + ((p / z).powi(2) + 1.0).sqrt()).ln();
    let phase = w - p * asinh - FRAC_PI_4;
    let modulus = (2.0 * PI).sqrt() / w.sqrt() / (2.0 * PI);
    Ok(ComplexVal::from_polar(modulus, phase))
}
