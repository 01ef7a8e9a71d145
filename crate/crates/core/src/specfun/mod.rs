//! Complex-parameter special functions.
//!
//! Everything here is a pure function. Values that can leave the `f64`
//! range come in a `_log` flavour returning [`LogComplex`](crate::LogComplex)
//! or a `_scaled` flavour with the exponential factor divided out.

mod asym;
mod bessel;
mod gamma;
mod hyper;
mod legendre;
mod macdonald;
mod pcf;

pub use asym::{
    asym_bessel_j_imag, asym_bessel_j_imag_scaled, asym_macdonald_k, asym_macdonald_k_errors, asym_macdonald_k_scaled,
    asym_macdonald_k_scaled_with, asym_macdonald_k_with, ASYM_K_X_MIN,
};
pub use bessel::{bessel_j, bessel_j_log, bessel_j_scaled};
pub use gamma::{gamma_complex, gamma_ratio, gamma_ratio_asym, log_gamma_complex, rgamma_log};
pub use hyper::{
    hyp0f1, hyp0f1_with, hyp1f1, hyp1f1_with, hyp2f1, hyp2f1_regularized, hyp2f1_with, SeriesOptions,
    SeriesReport, HYP2F1_Z_MAX,
};
pub use legendre::{
    legendre_p_interval, legendre_p_interval_log, legendre_p_ray, legendre_p_ray_integral, legendre_p_ray_log,
    legendre_p_ray_series, ray_integral_converges,
};
pub use macdonald::{macdonald_k, macdonald_k_scaled, macdonald_k_scaled_continuation, RHO_QUAD_CAP};
pub use pcf::pcf_d;
