//! `h2c contract`: convergence studies of the contraction limits.

use h2contract::basis::LimitParams;
use h2contract::contraction::{convergence_study, ConvergenceStudy, Verdict, DEFAULT_R_GRID, MAX_SLOPE};
use h2contract::geometry::{ChartId, EuclidPoint};
use serde_json::Value;

use crate::config::{Fail, RunConfig};
use crate::report::{num, Report, Row, Table};

pub const FAMILIES: [ChartId; 6] = [
    ChartId::PseudoSpherical,
    ChartId::Equidistant,
    ChartId::Horocyclic,
    ChartId::SemiCircularParabolic,
    ChartId::EllipticParabolic,
    ChartId::HyperbolicParabolic,
];

pub const RECORD_COLUMNS: [&str; 8] = ["family", "point", "x", "y", "radius", "err", "pointwise", "metric"];

/// Default limit parameters and test points for each family.
pub fn default_study(family: ChartId) -> (LimitParams, Vec<[f64; 2]>) {
    match family {
        ChartId::PseudoSpherical => (LimitParams::Polar { k: 1.0, m: 0 }, vec![[1.0, 0.0], [0.3, 0.4], [-0.5, 1.0]]),
        ChartId::Equidistant => {
            (LimitParams::Plane { k1: 0.6, k2: 0.8, eps: 1 }, vec![[0.3, 0.4], [-1.0, 0.5], [0.7, -0.2]])
        }
        ChartId::Horocyclic => (LimitParams::HoLim { k1: 0.6, k2: 0.8 }, vec![[0.3, 0.4], [0.0, 0.0], [0.2, 0.1]]),
        ChartId::SemiCircularParabolic | ChartId::SemiCircularParabolicRotated => {
            (LimitParams::ScpLim { k1: 0.3, k2: 0.4 }, vec![[0.3, 0.4], [0.0, 0.0], [-0.4, 0.2]])
        }
        ChartId::EllipticParabolic => {
            (LimitParams::EpLim { k: 1.0, lambda: 0.5 }, vec![[0.16, 0.63], [0.3, 0.4], [-0.2, 0.5]])
        }
        ChartId::HyperbolicParabolic => {
            (LimitParams::HpLim { k1: 0.8, k2: 0.6 }, vec![[0.3, 0.4], [0.0, 0.5], [-0.4, 0.2]])
        }
    }
}

fn has_limit_keys(cfg: &RunConfig) -> bool {
    cfg.k.is_some() || cfg.m.is_some() || cfg.k1.is_some() || cfg.k2.is_some() || cfg.eps.is_some() || cfg.lambda.is_some()
}

/// Defaults overlaid with whatever limit keys the config sets.
fn limit_params(family: ChartId, cfg: &RunConfig) -> LimitParams {
    let (lp, _) = default_study(family);
    match lp {
        LimitParams::Polar { k, m } => LimitParams::Polar { k: cfg.k.unwrap_or(k), m: cfg.m.unwrap_or(m) },
        LimitParams::Plane { k1, k2, eps } => {
            LimitParams::Plane { k1: cfg.k1.unwrap_or(k1), k2: cfg.k2.unwrap_or(k2), eps: cfg.eps.unwrap_or(eps) }
        }
        LimitParams::HoLim { k1, k2 } => LimitParams::HoLim { k1: cfg.k1.unwrap_or(k1), k2: cfg.k2.unwrap_or(k2) },
        LimitParams::ScpLim { k1, k2 } => LimitParams::ScpLim { k1: cfg.k1.unwrap_or(k1), k2: cfg.k2.unwrap_or(k2) },
        LimitParams::EpLim { k, lambda } => {
            LimitParams::EpLim { k: cfg.k.unwrap_or(k), lambda: cfg.lambda.unwrap_or(lambda) }
        }
        LimitParams::HpLim { k1, k2 } => LimitParams::HpLim { k1: cfg.k1.unwrap_or(k1), k2: cfg.k2.unwrap_or(k2) },
    }
}

fn limit_inputs(lp: &LimitParams) -> Vec<(&'static str, f64)> {
    match *lp {
        LimitParams::Polar { k, m } => vec![("k", k), ("m", m as f64)],
        LimitParams::Plane { k1, k2, eps } => vec![("k1", k1), ("k2", k2), ("eps", eps as f64)],
        LimitParams::HoLim { k1, k2 }
        | LimitParams::ScpLim { k1, k2 }
        | LimitParams::HpLim { k1, k2 } => vec![("k1", k1), ("k2", k2)],
        LimitParams::EpLim { k, lambda } => vec![("k", k), ("lambda", lambda)],
    }
}

/// A point passes when its errors decrease strictly and the fitted slope is
/// at most `max_slope`, or when it is exact to roundoff at every radius.
fn judge(verdict: &Verdict, slope: Option<f64>, max_slope: f64) -> bool {
    match verdict {
        Verdict::ExactAtAllR => true,
        Verdict::Pass | Verdict::SlowRate => slope.is_some_and(|s| s <= max_slope),
        _ => false,
    }
}

fn verdict_name(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "pass".into(),
        Verdict::ExactAtAllR => "exact_at_all_r".into(),
        Verdict::NonMonotone => "non_monotone".into(),
        Verdict::SlowRate => "slow_rate".into(),
        Verdict::IllConditioned(d) => format!("ill_conditioned: {d}"),
        Verdict::Error(d) => format!("error: {d}"),
    }
}

pub fn run(cfg: &RunConfig) -> Result<Report, Fail> {
    let families: Vec<ChartId> = match cfg.family {
        Some(ChartId::SemiCircularParabolicRotated) => vec![ChartId::SemiCircularParabolic],
        Some(f) => vec![f],
        None if has_limit_keys(cfg) => {
            return Err(Fail::Config("limit parameters (k, m, k1, k2, eps, lambda) need a family".into()))
        }
        None => FAMILIES.to_vec(),
    };
    let r_grid = cfg.r_grid.clone().unwrap_or_else(|| DEFAULT_R_GRID.to_vec());
    let max_slope = cfg.tol.unwrap_or(MAX_SLOPE);
    let mut rows = Vec::new();
    let mut records = Vec::new();
    let mut studies: Vec<ConvergenceStudy> = Vec::new();
    for family in families {
        let lp = limit_params(family, cfg);
        let pts: Vec<EuclidPoint> = cfg
            .points
            .clone()
            .unwrap_or_else(|| default_study(family).1)
            .into_iter()
            .map(|[x, y]| EuclidPoint::new(x, y))
            .collect();
        let base: Vec<(&str, f64)> = limit_inputs(&lp);
        let study = match lp.validate().and_then(|_| convergence_study(family, &lp, &pts, &r_grid)) {
            Ok(s) => s,
            Err(e) => {
                let ins = base.iter().map(|(k, v)| (k.to_string(), *v)).collect();
                rows.push(Row::at_most(format!("contract/{family}"), ins, None, max_slope).with_detail(e.to_string()));
                continue;
            }
        };
        for (i, ps) in study.points.iter().enumerate() {
            let mut ins: std::collections::BTreeMap<String, f64> =
                base.iter().map(|(k, v)| (k.to_string(), *v)).collect();
            ins.insert("x".into(), ps.point.x);
            ins.insert("y".into(), ps.point.y);
            let mut detail = verdict_name(&ps.verdict);
            for n in &ps.notes {
                detail.push_str("; ");
                detail.push_str(n);
            }
            let mut row = Row::at_most(format!("contract/{family}/{i}"), ins, ps.slope, max_slope).with_detail(detail);
            row.passed = judge(&ps.verdict, ps.slope, max_slope);
            rows.push(row);
            let metric = serde_json::to_value(study.metric).unwrap_or(Value::Null);
            for r in &ps.records {
                records.push(vec![
                    Value::String(family.to_string()),
                    Value::from(i as u64),
                    num(ps.point.x),
                    num(ps.point.y),
                    num(r.radius),
                    num(r.err),
                    num(r.pointwise),
                    metric.clone(),
                ]);
            }
        }
        studies.push(study);
    }
    let mut cfg = cfg.clone();
    cfg.r_grid = Some(r_grid);
    let mut report = Report::new("contract", &cfg, rows);
    report.tables.push(Table {
        name: "records".into(),
        columns: RECORD_COLUMNS.iter().map(|c| c.to_string()).collect(),
        rows: records,
    });
    report.data = Some(serde_json::to_value(&studies).map_err(|e| Fail::Io(e.to_string()))?);
    Ok(report)
}
