//! `h2c`: evaluate hyperboloid bases, run verification suites and
//! contraction studies, and write CSV or JSON reports.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails (the report
//! is still written), 2 for configuration or domain errors.

mod config;
mod contract;
mod eval;
mod report;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use h2contract::geometry::ChartId;

use config::{Fail, Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "h2c", version, about = "Hyperboloid Helmholtz bases and their flat-space contraction")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate one basis function on a chart grid.
    #[command(allow_negative_numbers = true)]
    Eval,
    /// Run verification suites: manifold, metric, helmholtz, specfun-oracles (default: all).
    #[command(allow_negative_numbers = true)]
    Verify { suites: Vec<String> },
    /// Run contraction convergence studies (default: all six families).
    #[command(allow_negative_numbers = true)]
    Contract,
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// Flat TOML file whose keys mirror these flags; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// RNG seed for sampled suites [default: 42].
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Comma-separated radii for contraction studies.
    #[arg(long, global = true, value_parser = parse_radii, allow_hyphen_values = true)]
    r_grid: Option<Radii>,
    /// Threshold override: tolerance for verify, maximum slope for contract.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Basis family (chart id, snake_case).
    #[arg(long, global = true, value_parser = parse_chart)]
    family: Option<ChartId>,
    /// Chart to evaluate on, when the family admits more than one.
    #[arg(long, global = true, value_parser = parse_chart)]
    chart: Option<ChartId>,
    /// Samples per suite unit (manifold: total; metric: per chart; helmholtz: per family).
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    radius: Option<f64>,
    #[arg(long, global = true)]
    rho: Option<f64>,
    #[arg(long, global = true)]
    m: Option<i32>,
    #[arg(long, global = true)]
    nu: Option<f64>,
    #[arg(long, global = true)]
    eps: Option<i8>,
    #[arg(long, global = true)]
    s: Option<f64>,
    #[arg(long, global = true)]
    k: Option<f64>,
    #[arg(long, global = true)]
    k1: Option<f64>,
    #[arg(long, global = true)]
    k2: Option<f64>,
    #[arg(long, global = true)]
    lambda: Option<f64>,
    /// First-coordinate range `lo,hi`.
    #[arg(long, global = true, value_parser = parse_pair, allow_hyphen_values = true)]
    xi1: Option<[f64; 2]>,
    /// Second-coordinate range `lo,hi`.
    #[arg(long, global = true, value_parser = parse_pair, allow_hyphen_values = true)]
    xi2: Option<[f64; 2]>,
    #[arg(long, global = true)]
    n1: Option<usize>,
    #[arg(long, global = true)]
    n2: Option<usize>,
    /// Single chart point `xi1,xi2` instead of a grid.
    #[arg(long, global = true, value_parser = parse_pair, allow_hyphen_values = true)]
    point: Option<[f64; 2]>,
    /// Contraction test points `x,y;x,y;...`.
    #[arg(long, global = true, value_parser = parse_points, allow_hyphen_values = true)]
    points: Option<Points>,
}

#[derive(Debug, Clone)]
struct Radii(Vec<f64>);

#[derive(Debug, Clone)]
struct Points(Vec<[f64; 2]>);

impl Flags {
    fn to_config(&self) -> RunConfig {
        RunConfig {
            format: self.format,
            out: self.out.clone(),
            seed: self.seed,
            r_grid: self.r_grid.clone().map(|r| r.0),
            tol: self.tol,
            family: self.family,
            chart: self.chart,
            suite: None,
            samples: self.samples,
            radius: self.radius,
            rho: self.rho,
            m: self.m,
            nu: self.nu,
            eps: self.eps,
            s: self.s,
            k: self.k,
            k1: self.k1,
            k2: self.k2,
            lambda: self.lambda,
            xi1: self.xi1,
            xi2: self.xi2,
            n1: self.n1,
            n2: self.n2,
            point: self.point,
            points: self.points.clone().map(|p| p.0),
        }
    }
}

fn parse_radii(s: &str) -> Result<Radii, String> {
    parse_list(s).map(Radii)
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"))).collect()
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    match parse_list(s)?.as_slice() {
        [a, b] => Ok([*a, *b]),
        _ => Err(format!("expected two comma-separated numbers, got '{s}'")),
    }
}

fn parse_points(s: &str) -> Result<Points, String> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(parse_pair).collect::<Result<_, _>>().map(Points)
}

fn parse_chart(s: &str) -> Result<ChartId, String> {
    s.parse::<ChartId>().map_err(|e| e.to_string())
}

fn sink(cfg: &RunConfig) -> Result<Box<dyn Write>, Fail> {
    Ok(match &cfg.out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| Fail::Io(format!("{}: {e}", p.display())))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn execute(cli: &Cli) -> Result<bool, Fail> {
    let file = match &cli.flags.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let cfg = file.overlay(&cli.flags.to_config());
    cfg.validate()?;
    let format = cfg.format();
    match &cli.command {
        Command::Eval => {
            let out = eval::run(&cfg)?;
            let mut w = sink(&cfg)?;
            out.write(format, &mut w)?;
            w.flush().map_err(|e| Fail::Io(e.to_string()))?;
            eprintln!("eval: {} values, {} failed", out.table.rows.len(), out.failed);
            Ok(out.failed == 0)
        }
        Command::Verify { suites } => {
            let suites = verify::resolve_suites(suites, &cfg)?;
            eprintln!("verify: suites {} (seed {})", suites.join(", "), cfg.seed());
            finish(verify::run(&suites, &cfg)?, &cfg)
        }
        Command::Contract => finish(contract::run(&cfg)?, &cfg),
    }
}

fn finish(report: report::Report, cfg: &RunConfig) -> Result<bool, Fail> {
    let mut w = sink(cfg)?;
    report.write(cfg.format(), &mut w)?;
    w.flush().map_err(|e| Fail::Io(e.to_string()))?;
    let s = report.summary;
    eprintln!("{}: {}/{} passed, {} failed", report.command, s.passed, s.total, s.failed);
    for r in report.rows.iter().filter(|r| !r.passed).take(10) {
        eprintln!("  FAIL {} measured={:?} threshold={} {}", r.name, r.measured, r.threshold, r.detail);
    }
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("h2c: {e}");
            ExitCode::from(2)
        }
    }
}
