//! Complex numbers stored as `exp(log_mag) · exp(i·phase)`.
//!
//! Prefactors such as `√π 2^{ikR} / Γ(¾ − iR(k+k₁)/2) Γ(¾ − iR(k−k₁)/2)` leave
//! the `f64` range long before `R = 10³`, so every such product is assembled
//! here and only materialized when it fits.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ComplexVal;

/// Largest `log_mag` that `to_complex` will materialize.
pub const MAX_LINEAR_LOG: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogComplex {
    /// Natural log of the modulus; `-inf` encodes zero.
    pub log_mag: f64,
    /// Argument in `(-π, π]`.
    pub phase: f64,
}

/// Reduce an angle to `(-π, π]`.
pub fn reduce_phase(theta: f64) -> f64 {
    if !theta.is_finite() {
        return theta;
    }
    let two_pi = 2.0 * PI;
    let mut r = theta - two_pi * (theta / two_pi).round();
    if r <= -PI {
        r += two_pi;
    } else if r > PI {
        r -= two_pi;
    }
    r
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex {
        log_mag: f64::NEG_INFINITY,
        phase: 0.0,
    };
    pub const ONE: LogComplex = LogComplex {
        log_mag: 0.0,
        phase: 0.0,
    };

    pub fn new(log_mag: f64, phase: f64) -> Self {
        if log_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        LogComplex {
            log_mag,
            phase: reduce_phase(phase),
        }
    }

    /// `exp(w)` for complex `w`, without ever forming it linearly.
    pub fn exp(w: ComplexVal) -> Self {
        Self::new(w.re, w.im)
    }

    pub fn from_complex(z: ComplexVal) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        Self::new(z.norm().ln(), z.arg())
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_complex(ComplexVal::new(x, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    pub fn is_finite(&self) -> bool {
        self.is_zero() || (self.log_mag.is_finite() && self.phase.is_finite())
    }

    pub fn abs(&self) -> f64 {
        self.log_mag.exp()
    }

    /// Principal logarithm `log_mag + i·phase`.
    pub fn ln(&self) -> ComplexVal {
        ComplexVal::new(self.log_mag, self.phase)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.log_mag, -self.phase)
    }

    pub fn inv(&self) -> Self {
        Self::new(-self.log_mag, -self.phase)
    }

    /// Principal power `exp(α · log z)`.
    pub fn powc(&self, alpha: ComplexVal) -> Self {
        if self.is_zero() {
            return if alpha.re > 0.0 { Self::ZERO } else { Self::new(f64::INFINITY, 0.0) };
        }
        Self::exp(alpha * self.ln())
    }

    pub fn powf(&self, alpha: f64) -> Self {
        self.powc(ComplexVal::new(alpha, 0.0))
    }

    /// Linear value, or an overflow error past `MAX_LINEAR_LOG`.
    pub fn to_complex(&self) -> Result<ComplexVal> {
        if self.is_zero() {
            return Ok(ComplexVal::new(0.0, 0.0));
        }
        if !self.log_mag.is_finite() || !self.phase.is_finite() {
            return Err(Error::NonFinite(format!("{self}")));
        }
        if self.log_mag > MAX_LINEAR_LOG {
            return Err(Error::Overflow(format!(
                "|value| = exp({:.3}) is not representable",
                self.log_mag
            )));
        }
        Ok(ComplexVal::from_polar(self.log_mag.exp(), self.phase))
    }

    /// Linear value; underflows to zero and overflows to infinity silently.
    pub fn to_complex_lossy(&self) -> ComplexVal {
        if self.is_zero() {
            return ComplexVal::new(0.0, 0.0);
        }
        ComplexVal::from_polar(self.log_mag.exp(), self.phase)
    }

    /// `self + other`, rescaled by the larger modulus so nothing overflows.
    pub fn add(&self, other: &LogComplex) -> LogComplex {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let scale = self.log_mag.max(other.log_mag);
        let a = ComplexVal::from_polar((self.log_mag - scale).exp(), self.phase);
        let b = ComplexVal::from_polar((other.log_mag - scale).exp(), other.phase);
        let s = LogComplex::from_complex(a + b);
        LogComplex::new(s.log_mag + scale, s.phase)
    }

    pub fn sub(&self, other: &LogComplex) -> LogComplex {
        self.add(&(-*other))
    }

    /// Multiply by a linear complex factor.
    pub fn scale(&self, z: ComplexVal) -> LogComplex {
        *self * LogComplex::from_complex(z)
    }
}

impl Mul for LogComplex {
    type Output = LogComplex;
    fn mul(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() || rhs.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_mag + rhs.log_mag, self.phase + rhs.phase)
    }
}

impl Div for LogComplex {
    type Output = LogComplex;
    fn div(self, rhs: LogComplex) -> LogComplex {
        self * rhs.inv()
    }
}

impl Neg for LogComplex {
    type Output = LogComplex;
    fn neg(self) -> LogComplex {
        LogComplex::new(self.log_mag, self.phase + PI)
    }
}

impl From<ComplexVal> for LogComplex {
    fn from(z: ComplexVal) -> Self {
        LogComplex::from_complex(z)
    }
}

impl fmt::Display for LogComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({:.6}) * e^(i {:.6})", self.log_mag, self.phase)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn phase_is_reduced() {
        let z = LogComplex::new(0.0, 7.0 * PI);
        assert_relative_eq!(z.phase, PI, epsilon = 1e-12);
        let z = LogComplex::new(0.0, -PI);
        assert_relative_eq!(z.phase, PI, epsilon = 1e-12);
    }

    #[test]
    fn huge_product_stays_finite() {
        let big = LogComplex::new(600.0, 1.0);
        let prod = big * big;
        assert!(prod.to_complex().is_err());
        let back = prod / big;
        let z = back.to_complex().unwrap();
        assert_relative_eq!(z.norm().ln(), 600.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_behaves() {
        let z = LogComplex::ZERO;
        assert!(z.is_zero());
        assert_eq!(z.to_complex().unwrap(), ComplexVal::new(0.0, 0.0));
        assert!((z * LogComplex::new(5.0, 1.0)).is_zero());
        let w = LogComplex::new(1.0, 0.5);
        assert_eq!(z.add(&w), w);
    }

    proptest! {
        #[test]
        fn linear_roundtrip_and_arithmetic(
            ar in -50.0..50.0f64, ai in -50.0..50.0f64,
            br in -50.0..50.0f64, bi in -50.0..50.0f64,
        ) {
            let a = ComplexVal::new(ar, ai);
            let b = ComplexVal::new(br, bi);
            prop_assume!(a.norm() > 1e-6 && b.norm() > 1e-6);
            let la = LogComplex::from_complex(a);
            let lb = LogComplex::from_complex(b);
            let tol = 1e-12 * (a.norm() * b.norm()).max(1.0);
            prop_assert!(((la * lb).to_complex().unwrap() - a * b).norm() <= tol);
            prop_assert!(((la / lb).to_complex().unwrap() - a / b).norm() <= 1e-12 * (a / b).norm().max(1.0));
            let sum_tol = 1e-12 * (a.norm() + b.norm());
            prop_assert!((la.add(&lb).to_complex().unwrap() - (a + b)).norm() <= sum_tol);
        }
    }
}
