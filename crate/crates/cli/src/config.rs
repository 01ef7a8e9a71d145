//! Run configuration: an optional flat TOML file overlaid by command-line
//! flags, validated before anything runs.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use h2contract::geometry::ChartId;
use serde::{Deserialize, Serialize};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Errors that stop a run before any check is judged. All map to exit code 2.
#[derive(Debug)]
pub enum Fail {
    Config(String),
    Domain(String),
    Io(String),
}

impl fmt::Display for Fail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fail::Config(m) => write!(f, "config error: {m}"),
            Fail::Domain(m) if m.contains("domain") => f.write_str(m),
            Fail::Domain(m) => write!(f, "domain error: {m}"),
            Fail::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

/// Every key is optional; unset keys take the documented defaults of the
/// command that reads them. Field names double as config-file keys.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", alias = "r-grid")]
    pub r_grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<ChartId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart: Option<ChartId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi1: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi2: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 2]>>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident; $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f.clone(); } )*
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Fail> {
        let text = std::fs::read_to_string(path).map_err(|e| Fail::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Fail::Config(format!("{}: {}", path.display(), e.message())))
    }

    /// Keys set in `other` win.
    pub fn overlay(mut self, other: &RunConfig) -> Self {
        overlay!(self, other; format, out, seed, r_grid, tol, family, chart, suite, samples, radius,
            rho, m, nu, eps, s, k, k1, k2, lambda, xi1, xi2, n1, n2, point, points);
        self
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    /// Checks that do not depend on the command.
    pub fn validate(&self) -> Result<(), Fail> {
        let finite = |name: &str, v: Option<f64>| match v {
            Some(x) if !x.is_finite() => Err(Fail::Config(format!("{name} must be finite (got {x})"))),
            _ => Ok(()),
        };
        for (name, v) in [
            ("radius", self.radius),
            ("rho", self.rho),
            ("nu", self.nu),
            ("s", self.s),
            ("k", self.k),
            ("k1", self.k1),
            ("k2", self.k2),
            ("lambda", self.lambda),
        ] {
            finite(name, v)?;
        }
        if let Some(t) = self.tol {
            if !(t.is_finite()) {
                return Err(Fail::Config(format!("tol must be finite (got {t})")));
            }
        }
        if let Some(r) = self.radius {
            if r <= 0.0 {
                return Err(Fail::Config(format!("radius must be positive (got {r})")));
            }
        }
        if let Some(g) = &self.r_grid {
            if g.len() < 3 {
                return Err(Fail::Config(format!("r_grid needs at least 3 values (got {})", g.len())));
            }
            if !g.iter().all(|r| r.is_finite() && *r > 0.0) || !g.windows(2).all(|w| w[1] > w[0]) {
                return Err(Fail::Config("r_grid must be positive and strictly increasing".into()));
            }
        }
        if let Some(e) = self.eps {
            if e != 1 && e != -1 {
                return Err(Fail::Config(format!("eps must be 1 or -1 (got {e})")));
            }
        }
        for (name, n) in [("n1", self.n1), ("n2", self.n2)] {
            if let Some(n) = n {
                if !(1..=4096).contains(&n) {
                    return Err(Fail::Config(format!("{name} must be in 1..=4096 (got {n})")));
                }
            }
        }
        if self.samples == Some(0) {
            return Err(Fail::Config("samples must be positive".into()));
        }
        for (name, r) in [("xi1", self.xi1), ("xi2", self.xi2)] {
            if let Some([a, b]) = r {
                if !(a.is_finite() && b.is_finite() && a <= b) {
                    return Err(Fail::Config(format!("{name} must be a finite range lo,hi with lo <= hi")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_rejected() {
        let err = toml::from_str::<RunConfig>("sede = 3").unwrap_err();
        assert!(err.message().contains("unknown field"));
    }

    #[test]
    fn integers_accepted_for_floats() {
        let c: RunConfig = toml::from_str("r_grid = [25, 50, 100]\nfamily = \"horocyclic\"\nrho = 1").unwrap();
        assert_eq!(c.r_grid, Some(vec![25.0, 50.0, 100.0]));
        assert_eq!(c.family, Some(ChartId::Horocyclic));
    }

    #[test]
    fn flags_override_file() {
        let file = RunConfig { seed: Some(7), tol: Some(1e-3), ..Default::default() };
        let flags = RunConfig { seed: Some(9), ..Default::default() };
        let merged = file.overlay(&flags);
        assert_eq!(merged.seed(), 9);
        assert_eq!(merged.tol, Some(1e-3));
    }

    #[test]
    fn bad_grid_rejected() {
        let c = RunConfig { r_grid: Some(vec![50.0, 25.0, 100.0]), ..Default::default() };
        assert!(matches!(c.validate(), Err(Fail::Config(_))));
    }
}
