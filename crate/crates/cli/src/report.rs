//! Report assembly and the two output encodings.
//!
//! CSV layout (frozen): `#`-prefixed header lines, then the columns
//! `name,inputs,measured,threshold,passed,detail`, then a `# summary` line.
//! `inputs` is `key=value` pairs joined by `;`. Commands that also produce a
//! data table append it after a `# table: <name>` line with its own header.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::config::{Fail, Format, RunConfig};

pub const SCHEMA: u32 = 1;
pub const TOOL: &str = "h2c";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One judged check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub name: String,
    pub inputs: BTreeMap<String, f64>,
    /// `None` when the quantity could not be computed; the row then fails.
    pub measured: Option<f64>,
    pub threshold: f64,
    pub passed: bool,
    pub detail: String,
}

impl Row {
    /// Passes when `measured <= threshold`.
    pub fn at_most(name: impl Into<String>, inputs: BTreeMap<String, f64>, measured: Option<f64>, threshold: f64) -> Self {
        let passed = measured.is_some_and(|m| m <= threshold);
        Row { name: name.into(), inputs, measured, threshold, passed, detail: String::new() }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// A data table carried alongside the rows (grid values, convergence records).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub config: RunConfig,
    pub rows: Vec<Row>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
    /// Structured command output that has no flat form (JSON only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig, rows: Vec<Row>) -> Self {
        let passed = rows.iter().filter(|r| r.passed).count();
        let summary = Summary { total: rows.len(), passed, failed: rows.len() - passed };
        Report {
            schema: SCHEMA,
            tool: TOOL,
            version: VERSION,
            command: command.to_string(),
            seed: config.seed(),
            config: config.clone(),
            rows,
            summary,
            tables: Vec::new(),
            data: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), Fail> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self).map_err(|e| Fail::Io(e.to_string()))?;
                writeln!(out).map_err(io)
            }
            Format::Csv => self.write_csv(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> Result<(), Fail> {
        let config = serde_json::to_string(&self.config).map_err(|e| Fail::Io(e.to_string()))?;
        writeln!(out, "# {} {} {} schema={} seed={}", self.tool, self.version, self.command, self.schema, self.seed)
            .map_err(io)?;
        writeln!(out, "# config: {config}").map_err(io)?;
        {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["name", "inputs", "measured", "threshold", "passed", "detail"]).map_err(csv_err)?;
            for r in &self.rows {
                let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let measured = r.measured.map(|m| m.to_string()).unwrap_or_default();
                w.write_record([
                    r.name.as_str(),
                    &inputs.join(";"),
                    &measured,
                    &r.threshold.to_string(),
                    if r.passed { "true" } else { "false" },
                    &r.detail,
                ])
                .map_err(csv_err)?;
            }
            w.flush().map_err(io)?;
        }
        let s = self.summary;
        writeln!(out, "# summary: total={} passed={} failed={}", s.total, s.passed, s.failed).map_err(io)?;
        for t in &self.tables {
            write_table(t, out)?;
        }
        Ok(())
    }
}

pub fn write_table(t: &Table, out: &mut dyn Write) -> Result<(), Fail> {
    writeln!(out, "# table: {}", t.name).map_err(io)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&t.columns).map_err(csv_err)?;
    for row in &t.rows {
        w.write_record(row.iter().map(cell)).map_err(csv_err)?;
    }
    w.flush().map_err(io)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "NaN".to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// JSON number, or null for non-finite values.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

/// Build an inputs map from `(key, value)` pairs.
pub fn inputs<const N: usize>(pairs: [(&str, f64); N]) -> BTreeMap<String, f64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn io(e: std::io::Error) -> Fail {
    Fail::Io(e.to_string())
}

fn csv_err(e: csv::Error) -> Fail {
    Fail::Io(e.to_string())
}
