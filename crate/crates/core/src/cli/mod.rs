//! Command-line front end: `verify`, `scan`, `bounds` and `counterexample`.
//!
//! Exit codes: 0 pass, 1 verdict failure, 2 usage or configuration error.
//! `EVOFAM_THREADS` caps the worker threads used by the parallel scans.

mod commands;
mod config;
mod registry;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_bounds, cmd_counterexample, cmd_scan, cmd_verify, Outcome};
pub use config::{parse_list, parse_pair, GridOverrides, RunConfig, Tolerances};
pub use registry::{
    build, build_real, loewner_mobius_closed_form, Registered, CONTINUOUS_BUILTINS, DISCONTINUOUS_BUILTINS,
    REGISTRY_HELP,
};

use crate::error::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "evofam",
    version,
    about = "Evolution families of holomorphic self-maps of the unit disk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the evolution-family axioms EF1–EF3 and the hyperbolic bound.
    Verify(Common),
    /// Estimate continuity moduli and give a heuristic continuity verdict.
    Scan(Common),
    /// Audit the disk bounds on random compositions of primitive maps.
    Bounds(Common),
    /// Build the Hamel counterexample and exhibit its discontinuity.
    Counterexample(Common),
}

/// A single comma-separated flag value, not a repeated flag.
type Radii = Vec<f64>;

#[derive(Debug, Args)]
struct Common {
    /// TOML run configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Family registry name [default: radial]
    #[arg(long, long_help = format!("Family registry name [default: radial]: {REGISTRY_HELP}"))]
    family: Option<String>,
    /// Time interval `a,b` [default: 0,1]
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    interval: Option<[f64; 2]>,
    /// Number of grid times [default: 9]
    #[arg(long)]
    grid: Option<usize>,
    /// Comma-separated sample radii [default: 0.25,0.5,0.75,0.9]
    #[arg(long, value_parser = parse_list)]
    radii: Option<Radii>,
    /// Angles per sample circle [default: 64]
    #[arg(long)]
    angles: Option<usize>,
    /// Delta halvings in the moduli ladder [default: 9]
    #[arg(long)]
    levels: Option<usize>,
    /// Diagonal centers [default: 11]
    #[arg(long)]
    centers: Option<usize>,
    /// RNG seed, recorded in every report [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    /// JSON report path; the report goes to stdout otherwise
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for CSV modulus tables (scan)
    #[arg(long)]
    csv_dir: Option<PathBuf>,
    /// Base point `x,y` for right-parameter moduli and certificates [default: 0.3,0]
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    base_point: Option<[f64; 2]>,
    /// Certificate radius [default: 0.5]
    #[arg(long)]
    radius: Option<f64>,
    /// Audit trials (bounds) [default: 1000]
    #[arg(long)]
    trials: Option<usize>,
    /// Scale audited maps by 1.01 so the audit must fail (bounds)
    #[arg(long)]
    widen: bool,
    /// Hamel spec file (counterexample) [default: built-in √2 spec]
    #[arg(long)]
    spec: Option<PathBuf>,
    /// EF2 tolerance [default: 1e-12]
    #[arg(long)]
    ef2_tol: Option<f64>,
    /// EF3 tolerance [default: 1e-10, or 1e-8 for Loewner families]
    #[arg(long)]
    ef3_tol: Option<f64>,
}

impl Common {
    fn into_config(self) -> Result<RunConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_path(path)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($field:expr, $value:expr) => {
                if let Some(v) = $value {
                    $field = v;
                }
            };
        }
        set!(cfg.family, self.family);
        set!(cfg.interval, self.interval);
        set!(cfg.seed, self.seed);
        set!(cfg.base_point, self.base_point);
        set!(cfg.radius, self.radius);
        set!(cfg.trials, self.trials);
        set!(cfg.tolerances.ef2, self.ef2_tol);
        if let Some(t) = self.ef3_tol {
            cfg.tolerances.ef3 = t;
            cfg.tolerances.ef3_numerical = t;
        }
        let g = &mut cfg.grid;
        g.n_time = self.grid.or(g.n_time);
        g.radii = self.radii.or(g.radii.take());
        g.n_angles = self.angles.or(g.n_angles);
        g.levels = self.levels.or(g.levels);
        g.n_centers = self.centers.or(g.n_centers);
        cfg.out = self.out.or(cfg.out);
        cfg.csv_dir = self.csv_dir.or(cfg.csv_dir);
        cfg.spec = self.spec.or(cfg.spec);
        cfg.widen |= self.widen;
        Ok(cfg)
    }
}

fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::Config(_)
        | Error::Domain(_)
        | Error::IntervalMismatch { .. }
        | Error::BasisMismatch(_)
        | Error::Lattice(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn emit(json: String, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => {
            std::fs::write(path, json + "\n").map_err(|e| Error::Config(format!("writing {}: {e}", path.display())))
        }
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn execute(command: Command) -> Result<i32, Error> {
    let (kind, common) = match command {
        Command::Verify(c) => ("verify", c),
        Command::Scan(c) => ("scan", c),
        Command::Bounds(c) => ("bounds", c),
        Command::Counterexample(c) => ("counterexample", c),
    };
    let cfg = common.into_config()?;
    let passed = if kind == "bounds" {
        if cfg.trials == 0 {
            eprintln!("warning: 0 trials requested; the audit passes vacuously");
        }
        let outcome = cmd_bounds(&cfg)?;
        let report = &outcome.report;
        for v in &report.violations {
            eprintln!(
                "violation: trial {} {} at z = {} on {}: {:.17e} > {:.17e}",
                v.trial, v.check, v.point, v.map, v.observed, v.bound
            );
        }
        for e in &report.errors {
            eprintln!("error: {e}");
        }
        eprintln!(
            "bounds: {} violations over {} trials",
            report.total_violations(),
            cfg.trials
        );
        let json = serde_json::to_string_pretty(report).map_err(|e| Error::Config(e.to_string()))?;
        emit(json, cfg.out.as_ref())?;
        outcome.passed
    } else {
        let outcome = match kind {
            "verify" => cmd_verify(&cfg)?,
            "scan" => cmd_scan(&cfg)?,
            _ => cmd_counterexample(&cfg)?,
        };
        for (name, v) in &outcome.report.verdicts {
            let status = if v.passed { "pass" } else { "FAIL" };
            eprintln!(
                "{kind} {name}: {status} ({:.6e} {} {:e}) {}",
                v.statistic, v.comparison, v.threshold, v.note
            );
        }
        emit(outcome.report.to_json()?, cfg.out.as_ref())?;
        outcome.passed
    };
    Ok(if passed { EXIT_PASS } else { EXIT_FAIL })
}

fn thread_cap() -> Result<Option<usize>, Error> {
    match std::env::var("EVOFAM_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Config(format!(
                "EVOFAM_THREADS must be a positive integer, got `{v}`"
            ))),
        },
        Err(_) => Ok(None),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, A>(args: I) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let result = thread_cap().and_then(|cap| match cap {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(|| execute(cli.command)),
        None => execute(cli.command),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
