//! Reference values computed independently with mpmath (40 digits) and
//! embedded at build time. `tests/fixtures/generate.py` regenerates them;
//! each file's first line records the generator and precision.

use serde::Serialize;

use crate::basis::conical_p;
use crate::contraction::hp_ray_value;
use crate::error::{Error, Result};
use crate::specfun::{bessel_j, hyp2f1, legendre_p_interval, legendre_p_ray, log_gamma_complex, macdonald_k, pcf_d};
use crate::ComplexVal;

const FIXTURES: [(&str, &str); 9] = [
    ("log_gamma", include_str!("../tests/fixtures/log_gamma.csv")),
    ("hyp2f1", include_str!("../tests/fixtures/hyp2f1.csv")),
    ("bessel_j", include_str!("../tests/fixtures/bessel_j.csv")),
    ("macdonald_k", include_str!("../tests/fixtures/macdonald_k.csv")),
    ("legendre_interval", include_str!("../tests/fixtures/legendre_interval.csv")),
    ("legendre_ray", include_str!("../tests/fixtures/legendre_ray.csv")),
    ("pcf_d", include_str!("../tests/fixtures/pcf_d.csv")),
    ("hp_ray_sqrt2", include_str!("../tests/fixtures/hp_ray_sqrt2.csv")),
    ("conical", include_str!("../tests/fixtures/conical.csv")),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCase {
    pub suite: &'static str,
    pub inputs: Vec<f64>,
    pub expected: ComplexVal,
    pub rel_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheck {
    pub case: OracleCase,
    pub got: Option<ComplexVal>,
    /// Relative error, or `None` when evaluation failed.
    pub rel_err: Option<f64>,
    pub error: Option<String>,
    pub passed: bool,
}

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|f| f.0)
}

/// Parse one embedded fixture.
pub fn cases(suite: &str) -> Result<Vec<OracleCase>> {
    let (name, text) = FIXTURES
        .iter()
        .find(|f| f.0 == suite)
        .ok_or_else(|| Error::domain(format!("unknown oracle suite '{suite}'")))?;
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| Error::domain(format!("fixture {name}: {e}")))?;
        let vals: Vec<f64> = row
            .iter()
            .map(|c| c.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::domain(format!("fixture {name}: {e}")))?;
        let n = vals.len();
        if n < 4 {
            return Err(Error::domain(format!("fixture {name}: short row")));
        }
        out.push(OracleCase {
            suite: name,
            inputs: vals[..n - 3].to_vec(),
            expected: ComplexVal::new(vals[n - 3], vals[n - 2]),
            rel_tol: vals[n - 1],
        });
    }
    Ok(out)
}

fn evaluate(case: &OracleCase) -> Result<ComplexVal> {
    let v = &case.inputs;
    let c = ComplexVal::new;
    match case.suite {
        "log_gamma" => log_gamma_complex(c(v[0], v[1])).map(|l| l.ln()),
        "hyp2f1" => hyp2f1(c(v[0], v[1]), c(v[2], v[3]), c(v[4], v[5]), c(v[6], v[7])).map(|r| r.value),
        "bessel_j" => bessel_j(c(v[0], v[1]), v[2]),
        "macdonald_k" => macdonald_k(v[0], v[1]).map(|k| c(k, 0.0)),
        "legendre_interval" => legendre_p_interval(c(v[0], v[1]), c(v[2], v[3]), v[4]),
        "legendre_ray" => legendre_p_ray(c(v[0], v[1]), c(v[2], v[3]), v[4]),
        "pcf_d" => pcf_d(c(v[0], v[1]), c(v[2], v[3])),
        "hp_ray_sqrt2" => hp_ray_value(v[0], v[1], v[2], 0.0)?.to_complex(),
        "conical" => conical_p(v[0] as u32, v[1], v[2])?.to_complex(),
        other => Err(Error::domain(format!("unknown oracle suite '{other}'"))),
    }
}

fn rel_err(suite: &str, got: ComplexVal, expected: ComplexVal) -> f64 {
    let mut d = got - expected;
    if suite == "log_gamma" {
        // Branches of log Γ differ by multiples of 2πi.
        let turns = (d.im / std::f64::consts::TAU).round();
        d.im -= turns * std::f64::consts::TAU;
    }
    let scale = expected.norm();
    if scale == 0.0 {
        d.norm()
    } else {
        d.norm() / scale
    }
}

pub fn check(case: &OracleCase) -> OracleCheck {
    match evaluate(case) {
        Ok(got) => {
            let e = rel_err(case.suite, got, case.expected);
            OracleCheck { case: case.clone(), got: Some(got), rel_err: Some(e), error: None, passed: e <= case.rel_tol }
        }
        Err(err) => OracleCheck { case: case.clone(), got: None, rel_err: None, error: Some(err.to_string()), passed: false },
    }
}

/// Every case of every suite, in fixture order.
pub fn run_all() -> Result<Vec<OracleCheck>> {
    let mut out = Vec::new();
    for name in suite_names() {
        out.extend(cases(name)?.iter().map(check));
    }
    Ok(out)
}
