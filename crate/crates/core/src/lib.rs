//! Exactly solvable separated bases of the Helmholtz equation on the
//! two-sheeted hyperboloid `u0² − u1² − u2² = R²`, and numerical checks of
//! their `R → ∞` contraction onto flat-plane bases.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: complex-parameter special functions (log-gamma,
//!   hypergeometric series, imaginary-order Bessel and Macdonald functions,
//!   Legendre functions on `(−1, 1)` and `(1, ∞)`, parabolic cylinder
//!   functions) and the large-parameter asymptotic formulas.
//! - [`geometry`]: the seven coordinate charts, their embeddings and induced
//!   metrics, and the chart points used when contracting.
//! - [`basis`]: the six hyperboloid basis families, their flat limits and the
//!   `R`-dependent prefactors (kept in log-magnitude/phase form).
//! - [`lbop`]: finite-difference Laplace–Beltrami operator and residuals.
//! - [`contraction`]: parameter scalings, error metrics, convergence studies,
//!   the stationary-phase amplitude and the two-exponential fit.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod basis;
pub mod contraction;
mod dd;
pub mod error;
pub mod geometry;
pub mod lbop;
pub mod logc;
pub mod oracles;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
pub use logc::LogComplex;

/// Complex values in double precision.
pub type ComplexVal = num_complex::Complex64;
