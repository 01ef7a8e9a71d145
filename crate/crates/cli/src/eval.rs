//! `h2c eval`: one basis function tabulated on a chart grid.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::io::Write;

use h2contract::basis::{eval_basis, BasisParams};
use h2contract::geometry::{ChartId, ChartPoint};
use h2contract::Error;
use serde::Serialize;
use serde_json::Value;

use crate::config::{Fail, Format, RunConfig};
use crate::report::{num, write_table, Table, SCHEMA, TOOL, VERSION};

pub const COLUMNS: [&str; 6] = ["xi1", "xi2", "re", "im", "log_abs", "phase"];
pub const DEFAULT_N: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalOutput {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub config: RunConfig,
    pub params: BasisParams,
    pub chart: ChartId,
    pub radius: f64,
    pub table: Table,
    /// Grid points where evaluation failed (their values are null).
    pub failed: usize,
}

impl EvalOutput {
    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), Fail> {
        let io = |e: std::io::Error| Fail::Io(e.to_string());
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self).map_err(|e| Fail::Io(e.to_string()))?;
                writeln!(out).map_err(io)
            }
            Format::Csv => {
                let params = serde_json::to_string(&self.params).map_err(|e| Fail::Io(e.to_string()))?;
                let config = serde_json::to_string(&self.config).map_err(|e| Fail::Io(e.to_string()))?;
                writeln!(out, "# {} {} eval schema={} seed={}", self.tool, self.version, self.schema, self.seed).map_err(io)?;
                writeln!(out, "# params: {params}").map_err(io)?;
                writeln!(out, "# chart: {} radius={} failed={}", self.chart, self.radius, self.failed).map_err(io)?;
                writeln!(out, "# config: {config}").map_err(io)?;
                write_table(&self.table, out)
            }
        }
    }
}

/// Basis parameters named by `family` plus the separation constants.
pub fn basis_params(cfg: &RunConfig) -> Result<BasisParams, Fail> {
    let family = cfg.family.ok_or_else(|| Fail::Config("eval needs a family".into()))?;
    let need = |name: &str, v: Option<f64>| v.ok_or_else(|| Fail::Config(format!("family {family} needs {name}")));
    let rho = need("rho", cfg.rho)?;
    let par = match family {
        ChartId::PseudoSpherical => BasisParams::S { rho, m: cfg.m.unwrap_or(0) },
        ChartId::Equidistant => BasisParams::Eq { rho, nu: need("nu", cfg.nu)?, eps: cfg.eps.unwrap_or(1) },
        ChartId::Horocyclic => BasisParams::Ho { rho, s: need("s", cfg.s)? },
        ChartId::SemiCircularParabolic | ChartId::SemiCircularParabolicRotated => {
            BasisParams::Scp { rho, s: need("s", cfg.s)? }
        }
        ChartId::EllipticParabolic => BasisParams::Ep { rho, s: need("s", cfg.s)? },
        ChartId::HyperbolicParabolic => BasisParams::Hp { rho, s: need("s", cfg.s)? },
    };
    par.validate().map_err(|e| Fail::Config(e.to_string()))?;
    Ok(par)
}

/// Default coordinate ranges, inside each chart's open domain.
pub fn default_ranges(chart: ChartId) -> ([f64; 2], [f64; 2]) {
    match chart {
        ChartId::PseudoSpherical => ([0.1, 2.0], [0.0, TAU]),
        ChartId::Equidistant => ([-1.0, 1.0], [-2.0, 2.0]),
        ChartId::Horocyclic => ([-2.0, 2.0], [0.2, 3.0]),
        ChartId::SemiCircularParabolic | ChartId::SemiCircularParabolicRotated => ([0.1, 2.0], [0.1, 2.0]),
        ChartId::EllipticParabolic => ([0.05, 1.5], [-FRAC_PI_2 + 0.1, FRAC_PI_2 - 0.1]),
        ChartId::HyperbolicParabolic => ([0.1, 2.0], [0.1, PI - 0.1]),
    }
}

/// `n` nodes on `[lo, hi]`, or on `[lo, hi)` for a periodic coordinate.
fn nodes([lo, hi]: [f64; 2], n: usize, periodic: bool) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let div = if periodic { n } else { n - 1 } as f64;
    (0..n).map(|i| lo + (hi - lo) * i as f64 / div).collect()
}

pub fn run(cfg: &RunConfig) -> Result<EvalOutput, Fail> {
    let params = basis_params(cfg)?;
    let chart = cfg.chart.unwrap_or_else(|| params.chart());
    if !params.accepts(chart) {
        return Err(Fail::Config(format!("family {} is not evaluated on chart {chart}", params.chart())));
    }
    let radius = cfg.radius.unwrap_or(1.0);
    let grid: Vec<(f64, f64)> = match cfg.point {
        Some([a, b]) => vec![(a, b)],
        None => {
            let (d1, d2) = default_ranges(chart);
            let periodic = chart == ChartId::PseudoSpherical;
            let xs = nodes(cfg.xi1.unwrap_or(d1), cfg.n1.unwrap_or(DEFAULT_N), false);
            let ys = nodes(cfg.xi2.unwrap_or(d2), cfg.n2.unwrap_or(DEFAULT_N), periodic);
            xs.iter().flat_map(|&a| ys.iter().map(move |&b| (a, b))).collect()
        }
    };
    let points = grid
        .iter()
        .map(|&(a, b)| ChartPoint::new(chart, a, b).map_err(|e| Fail::Domain(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let mut failed = 0;
    let mut rows = Vec::with_capacity(points.len());
    for p in &points {
        let mut row = vec![num(p.xi1), num(p.xi2)];
        match eval_basis(&params, p, radius) {
            Ok(v) => {
                let z = v.value.to_complex_lossy();
                row.extend([num(z.re), num(z.im), num(v.value.log_mag), num(v.value.phase)]);
            }
            Err(e @ (Error::Domain(_) | Error::TagMismatch { .. } | Error::RadiusTooSmall { .. })) => {
                return Err(Fail::Domain(e.to_string()));
            }
            Err(_) => {
                failed += 1;
                row.extend([Value::Null, Value::Null, Value::Null, Value::Null]);
            }
        }
        rows.push(row);
    }
    Ok(EvalOutput {
        schema: SCHEMA,
        tool: TOOL,
        version: VERSION,
        command: "eval",
        seed: cfg.seed(),
        config: cfg.clone(),
        params,
        chart,
        radius,
        table: Table { name: "values".into(), columns: COLUMNS.iter().map(|c| c.to_string()).collect(), rows },
        failed,
    })
}
