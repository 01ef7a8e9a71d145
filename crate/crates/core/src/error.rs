use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the region where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Chart point requested for a contraction limit is out of domain at this `R`.
    #[error("domain error: {reason} (requires R > {min_radius})")]
    RadiusTooSmall { reason: String, min_radius: f64 },

    /// Gamma function evaluated at a nonpositive integer.
    #[error("gamma pole at z = {0}")]
    Pole(i64),

    /// A series did not meet its tolerance within the term cap.
    #[error("{what}: no convergence after {terms} terms (tail bound {tail_bound:e})")]
    NoConvergence {
        what: &'static str,
        terms: usize,
        tail_bound: f64,
    },

    /// Quadrature did not meet its tolerance within the subdivision cap.
    #[error("quadrature: error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    /// Result is finite in log form but not representable as an `f64` pair.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Basis parameters do not belong to the chart of the supplied point.
    #[error("parameter family {params} does not match chart {chart}")]
    TagMismatch { params: String, chart: String },

    /// A linear system or comparison is too poorly conditioned to be meaningful.
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
