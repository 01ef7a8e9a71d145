//! `h2c verify`: seeded identity, metric, Helmholtz and oracle suites.

use std::f64::consts::TAU;

use h2contract::basis::BasisParams;
use h2contract::geometry::{manifold_residual, metric, metric_fd_pullback, ChartId, ChartPoint};
use h2contract::lbop::{helmholtz_residual, FDScheme};
use h2contract::oracles;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Fail, RunConfig};
use crate::report::{inputs, Report, Row};

pub const SUITES: [&str; 4] = ["manifold", "metric", "helmholtz", "specfun-oracles"];

pub const MANIFOLD_SAMPLES: usize = 1000;
pub const MANIFOLD_TOL: f64 = 1e-12;
pub const METRIC_SAMPLES: usize = 100;
pub const METRIC_TOL: f64 = 1e-7;
pub const HELMHOLTZ_SAMPLES: usize = 20;
pub const HELMHOLTZ_TOL: f64 = 1e-5;

/// Each suite draws from its own stream so selecting suites never shifts
/// another suite's samples.
fn rng(seed: u64, suite: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(suite as u64);
    r
}

fn sample(chart: ChartId, rng: &mut ChaCha8Rng) -> ChartPoint {
    let (s, t): (f64, f64) = (rng.gen(), rng.gen());
    let (a, b) = match chart {
        ChartId::PseudoSpherical => (0.05 + 2.5 * s, TAU * t),
        ChartId::Equidistant => (-2.0 + 4.0 * s, -2.0 + 4.0 * t),
        ChartId::Horocyclic => (-3.0 + 6.0 * s, 0.1 + 3.0 * t),
        ChartId::SemiCircularParabolic | ChartId::SemiCircularParabolicRotated => (0.1 + 2.5 * s, 0.1 + 2.5 * t),
        ChartId::EllipticParabolic => (0.05 + 2.0 * s, -1.4 + 2.8 * t),
        ChartId::HyperbolicParabolic => (0.05 + 2.0 * s, 0.1 + 2.9 * t),
    };
    ChartPoint::new(chart, a, b).expect("sample ranges lie inside every chart")
}

fn log_radius(rng: &mut ChaCha8Rng) -> f64 {
    10f64.powf(rng.gen_range(-1.0..3.0))
}

fn point_inputs(p: &ChartPoint, radius: f64) -> std::collections::BTreeMap<String, f64> {
    inputs([("xi1", p.xi1), ("xi2", p.xi2), ("R", radius)])
}

fn manifold(cfg: &RunConfig) -> Vec<Row> {
    let mut rng = rng(cfg.seed(), 0);
    let n = cfg.samples.unwrap_or(MANIFOLD_SAMPLES);
    let tol = cfg.tol.unwrap_or(MANIFOLD_TOL);
    let cases: Vec<_> = (0..n).map(|i| (sample(ChartId::ALL[i % 7], &mut rng), log_radius(&mut rng))).collect();
    cases
        .par_iter()
        .map(|(p, radius)| {
            let name = format!("manifold/{}", p.chart);
            match manifold_residual(p, *radius) {
                Ok(r) => Row::at_most(name, point_inputs(p, *radius), Some(r.abs()), tol),
                Err(e) => Row::at_most(name, point_inputs(p, *radius), None, tol).with_detail(e.to_string()),
            }
        })
        .collect()
}

fn metric_suite(cfg: &RunConfig) -> Vec<Row> {
    let mut rng = rng(cfg.seed(), 1);
    let n = cfg.samples.unwrap_or(METRIC_SAMPLES);
    let tol = cfg.tol.unwrap_or(METRIC_TOL);
    let cases: Vec<_> = ChartId::ALL
        .iter()
        .flat_map(|&c| (0..n).map(move |_| c))
        .map(|c| (sample(c, &mut rng), log_radius(&mut rng)))
        .collect();
    cases
        .par_iter()
        .map(|(p, radius)| {
            let name = format!("metric/{}", p.chart);
            let dev = metric(p, *radius).and_then(|m| {
                let f = metric_fd_pullback(p, *radius)?;
                let scale = m.g11.abs().max(m.g22.abs());
                Ok((m.g11 - f.g11).abs().max((m.g22 - f.g22).abs()).max(f.g12.abs()) / scale)
            });
            match dev {
                Ok(d) => Row::at_most(name, point_inputs(p, *radius), Some(d), tol),
                Err(e) => Row::at_most(name, point_inputs(p, *radius), None, tol).with_detail(e.to_string()),
            }
        })
        .collect()
}

const FAMILIES: [ChartId; 6] = [
    ChartId::PseudoSpherical,
    ChartId::Equidistant,
    ChartId::Horocyclic,
    ChartId::SemiCircularParabolic,
    ChartId::EllipticParabolic,
    ChartId::HyperbolicParabolic,
];

/// Moderate parameters and points away from coordinate singularities.
fn helmholtz_case(family: ChartId, rng: &mut ChaCha8Rng) -> (BasisParams, ChartPoint, f64) {
    let rho = rng.gen_range(0.5..5.0);
    let radius = rng.gen_range(0.5..5.0);
    let signed = |rng: &mut ChaCha8Rng| {
        let v: f64 = rng.gen_range(0.3..3.0);
        if rng.gen_bool(0.5) { v } else { -v }
    };
    let (par, chart, a, b) = match family {
        ChartId::PseudoSpherical => (
            BasisParams::S { rho, m: rng.gen_range(-3..=3) },
            family,
            rng.gen_range(0.1..1.45),
            rng.gen_range(0.0..TAU),
        ),
        ChartId::Equidistant => (
            BasisParams::Eq { rho, nu: rng.gen_range(-3.0..3.0), eps: if rng.gen_bool(0.5) { 1 } else { -1 } },
            family,
            rng.gen_range(-1.2..1.2),
            rng.gen_range(-2.0..2.0),
        ),
        ChartId::Horocyclic => (BasisParams::Ho { rho, s: signed(rng) }, family, rng.gen_range(-2.0..2.0), rng.gen_range(0.2..3.0)),
        ChartId::SemiCircularParabolic | ChartId::SemiCircularParabolicRotated => {
            let chart = if rng.gen_bool(0.5) { ChartId::SemiCircularParabolic } else { ChartId::SemiCircularParabolicRotated };
            (BasisParams::Scp { rho, s: signed(rng) }, chart, rng.gen_range(0.3..2.0), rng.gen_range(0.3..2.0))
        }
        ChartId::EllipticParabolic => (
            BasisParams::Ep { rho, s: rng.gen_range(-3.0..3.0) },
            family,
            rng.gen_range(0.1..1.2),
            rng.gen_range(-1.0..1.0),
        ),
        ChartId::HyperbolicParabolic => (
            BasisParams::Hp { rho, s: rng.gen_range(0.3..3.0) },
            family,
            rng.gen_range(0.2..2.0),
            rng.gen_range(0.55..2.6),
        ),
    };
    (par, ChartPoint::new(chart, a, b).expect("case ranges lie inside the chart"), radius)
}

fn param_inputs(par: &BasisParams, p: &ChartPoint, radius: f64) -> std::collections::BTreeMap<String, f64> {
    let mut m = point_inputs(p, radius);
    let extra: Vec<(&str, f64)> = match *par {
        BasisParams::S { rho, m } => vec![("rho", rho), ("m", m as f64)],
        BasisParams::Eq { rho, nu, eps } => vec![("rho", rho), ("nu", nu), ("eps", eps as f64)],
        BasisParams::Ho { rho, s }
        | BasisParams::Scp { rho, s }
        | BasisParams::Ep { rho, s }
        | BasisParams::Hp { rho, s } => vec![("rho", rho), ("s", s)],
    };
    m.extend(extra.into_iter().map(|(k, v)| (k.to_string(), v)));
    m
}

fn helmholtz(cfg: &RunConfig) -> Vec<Row> {
    let mut rng = rng(cfg.seed(), 2);
    let n = cfg.samples.unwrap_or(HELMHOLTZ_SAMPLES);
    let tol = cfg.tol.unwrap_or(HELMHOLTZ_TOL);
    let families: Vec<ChartId> = match cfg.family {
        Some(f) => vec![if f == ChartId::SemiCircularParabolicRotated { ChartId::SemiCircularParabolic } else { f }],
        None => FAMILIES.to_vec(),
    };
    let cases: Vec<_> = families
        .iter()
        .flat_map(|&f| (0..n).map(move |_| f))
        .map(|f| helmholtz_case(f, &mut rng))
        .collect();
    let scheme = FDScheme::default();
    cases
        .par_iter()
        .map(|(par, p, radius)| {
            let name = format!("helmholtz/{}", par.chart());
            let ins = param_inputs(par, p, *radius);
            match helmholtz_residual(par, p, *radius, &scheme) {
                Ok(r) => Row::at_most(name, ins, Some(r), tol).with_detail(format!("chart {}", p.chart)),
                Err(e) => Row::at_most(name, ins, None, tol).with_detail(e.to_string()),
            }
        })
        .collect()
}

fn specfun_oracles(cfg: &RunConfig) -> Result<Vec<Row>, Fail> {
    let checks = oracles::run_all().map_err(|e| Fail::Io(format!("oracle fixtures: {e}")))?;
    let mut counters = std::collections::BTreeMap::<&str, usize>::new();
    Ok(checks
        .into_iter()
        .map(|c| {
            let i = counters.entry(c.case.suite).or_default();
            let name = format!("specfun-oracles/{}#{}", c.case.suite, i);
            *i += 1;
            let ins = c.case.inputs.iter().enumerate().map(|(j, v)| (format!("a{j}"), *v)).collect();
            let tol = cfg.tol.unwrap_or(c.case.rel_tol);
            let detail = match (&c.error, c.got) {
                (Some(e), _) => e.clone(),
                (None, Some(g)) => format!("expected {} got {}", c.case.expected, g),
                (None, None) => String::new(),
            };
            Row::at_most(name, ins, c.rel_err, tol).with_detail(detail)
        })
        .collect())
}

pub fn resolve_suites(positional: &[String], cfg: &RunConfig) -> Result<Vec<String>, Fail> {
    let chosen: Vec<String> = if !positional.is_empty() {
        positional.to_vec()
    } else if let Some(s) = &cfg.suite {
        s.clone()
    } else {
        SUITES.iter().map(|s| s.to_string()).collect()
    };
    for s in &chosen {
        if !SUITES.contains(&s.as_str()) {
            return Err(Fail::Config(format!("unknown suite '{s}' (expected one of {})", SUITES.join(", "))));
        }
    }
    Ok(chosen)
}

pub fn run(suites: &[String], cfg: &RunConfig) -> Result<Report, Fail> {
    let mut rows = Vec::new();
    for s in suites {
        match s.as_str() {
            "manifold" => rows.extend(manifold(cfg)),
            "metric" => rows.extend(metric_suite(cfg)),
            "helmholtz" => rows.extend(helmholtz(cfg)),
            "specfun-oracles" => rows.extend(specfun_oracles(cfg)?),
            other => return Err(Fail::Config(format!("unknown suite '{other}'"))),
        }
    }
    let mut cfg = cfg.clone();
    cfg.suite = Some(suites.to_vec());
    Ok(Report::new("verify", &cfg, rows))
}
