//! Command-line front end of the resource estimator.
//!
//! The `catshor` binary runs single estimates, grid optimizations, results
//! tables, the oracle-equivalence suites of the arithmetic circuits and
//! repetition-code Monte Carlo sampling. [`run`] is the whole program; the
//! binary only forwards its exit code.
//!
//! Settings come from flags, then from an optional JSON file given by
//! `--config` (see [`RunConfig`]), then from built-in defaults. Every JSON
//! output is wrapped in an envelope naming its schema and echoing the
//! effective settings; the schemas live in the repository's `schemas/`
//! directory.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 infeasible request, 3
//! circuit verification failure.

pub mod config;
mod output;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};

use clap::Parser;
use errormodel::{factory_table, read_factory_csv, ErrorParams64, FactoryTable};
use estimator::{
    emit_results_table_in, estimate, optimize_in, AlgoParams64, EstimatorError, Objective, SearchSpace, TableRow,
};
use serde_json::{json, Map, Value};

pub use config::{Cli, Command, Format, PrimeArg, RunConfig, SuiteArg};
pub use output::{Envelope, SCHEMA_VERSION};

/// Exit code of a successful run.
pub const EXIT_OK: u8 = 0;
/// Exit code of a malformed command line, configuration or input file.
pub const EXIT_USAGE: u8 = 1;
/// Exit code of a request with no feasible parameter point.
pub const EXIT_INFEASIBLE: u8 = 2;
/// Exit code of a failed circuit verification.
pub const EXIT_VERIFICATION: u8 = 3;

/// Default ratio `κ₁/κ₂`.
pub const DEFAULT_KAPPA_RATIO: f64 = 1e-5;
/// Default code-cycle time in nanoseconds.
pub const DEFAULT_CYCLE_NS: f64 = 500.0;
/// Photon number handed to the estimator, which replaces it by the α² of
/// every parameter point.
const PLACEHOLDER_ALPHA_SQ: f64 = 19.0;
/// Default number of Monte Carlo trials of `qec-sample`.
pub const DEFAULT_TRIALS: u64 = 10_000;

/// Errors ending a run.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
    #[error(transparent)]
    Model(#[from] errormodel::ErrorModelError),
    #[error(transparent)]
    Qec(#[from] qecsim::QecError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
            CliError::Estimator(EstimatorError::Infeasible(_) | EstimatorError::EmptyFeasibleSet) => EXIT_INFEASIBLE,
            CliError::Verification(_) => EXIT_VERIFICATION,
            _ => EXIT_USAGE,
        }
    }
}

/// Runs the program on `args` (including the program name), writing results
/// to `stdout` unless `--out` is given and diagnostics to `stderr`. Returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Validated settings shared by every command.
struct Settings {
    cfg: RunConfig,
    format: Format,
    kappa_ratio: f64,
    cycle_ns: f64,
    table: FactoryTable<f64>,
}

impl Settings {
    fn err_params(&self, alpha_sq: f64) -> Result<ErrorParams64, CliError> {
        Ok(ErrorParams64::new(self.kappa_ratio, alpha_sq, self.cycle_ns / 1e9)?)
    }

    fn base_config(&self, command: &str) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("command".into(), json!(command));
        m.insert("kappa_ratio".into(), json!(self.kappa_ratio));
        m.insert("cycle_ns".into(), json!(self.cycle_ns));
        if let Some(path) = &self.cfg.factory_table {
            m.insert("factory_table".into(), json!(path.display().to_string()));
        }
        m
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = cli.effective_config()?;
    let kappa_ratio = cfg.kappa_ratio.unwrap_or(DEFAULT_KAPPA_RATIO);
    let cycle_ns = cfg.cycle_ns.unwrap_or(DEFAULT_CYCLE_NS);
    if !(kappa_ratio > 0.0 && kappa_ratio.is_finite()) {
        return Err(CliError::Usage(format!("--kappa-ratio must be positive, got {kappa_ratio}")));
    }
    if !(cycle_ns > 0.0 && cycle_ns.is_finite()) {
        return Err(CliError::Usage(format!("--cycle-ns must be positive, got {cycle_ns}")));
    }
    let table = match &cfg.factory_table {
        Some(path) => read_factory_csv(path)?,
        None => factory_table(),
    };
    let format = cfg.format.unwrap_or_default();
    let settings = Settings { cfg, format, kappa_ratio, cycle_ns, table };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.cfg.workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", settings.cfg.workers.unwrap_or(0))))?;
    let rendered = pool.install(|| dispatch(&cli.command, &settings))?;

    match &settings.cfg.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            f.write_all(&rendered.bytes)?;
            f.flush()?;
        }
        None => stdout.write_all(&rendered.bytes)?,
    }
    match rendered.failure {
        Some(msg) => Err(CliError::Verification(msg)),
        None => Ok(()),
    }
}

/// Bytes to emit and, for verification runs, the failure to report after
/// emitting them.
struct Rendered {
    bytes: Vec<u8>,
    failure: Option<String>,
}

impl From<Vec<u8>> for Rendered {
    fn from(bytes: Vec<u8>) -> Self {
        Rendered { bytes, failure: None }
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing required value --{flag}")))
}

fn dispatch(command: &Command, s: &Settings) -> Result<Rendered, CliError> {
    match command {
        Command::Estimate(_) => cmd_estimate(s),
        Command::Optimize(_) => cmd_optimize(s),
        Command::Table(_) => cmd_table(s),
        Command::VerifyCircuits(a) => cmd_verify(s, a.inject_fault),
        Command::QecSample(_) => cmd_qec_sample(s),
    }
}

fn objective(s: &Settings) -> Result<Objective, CliError> {
    match &s.cfg.objective {
        Some(tag) => tag.parse().map_err(|_| CliError::Usage(format!("unknown objective `{tag}`"))),
        None => Ok(Objective::default()),
    }
}

fn in_grid<T: PartialOrd + std::fmt::Display>(name: &str, v: Option<T>, range: &std::ops::RangeInclusive<T>) -> Result<(), CliError> {
    match v {
        Some(v) if !range.contains(&v) => Err(CliError::Usage(format!(
            "--{name} = {v} outside the search grid [{}, {}]",
            range.start(),
            range.end()
        ))),
        _ => Ok(()),
    }
}

fn cmd_estimate(s: &Settings) -> Result<Rendered, CliError> {
    let c = &s.cfg;
    let n = require(c.n, "n")?;
    let err = s.err_params(PLACEHOLDER_ALPHA_SQ)?;
    let mut config = s.base_config("estimate");
    config.insert("n".into(), json!(n));
    for (key, v) in [("d", c.d.map(u64::from)), ("we", c.we.map(|v| v as u64)), ("wm", c.wm.map(|v| v as u64)), ("factory", c.factory.map(|v| v as u64))] {
        config.insert(key.into(), json!(v));
    }
    config.insert("alpha2".into(), json!(c.alpha2));

    let estimate = match (c.we, c.wm, c.alpha2, c.d, c.factory) {
        (Some(we), Some(wm), Some(a2), Some(d), Some(i)) => {
            estimate(&AlgoParams64::new(n, we, wm, a2, d, i), &err, &s.table)?
        }
        (we, wm, a2, d, i) => {
            config.insert("objective".into(), json!(objective(s)?.tag()));
            let grid = SearchSpace::default();
            in_grid("we", we, &grid.w_e)?;
            in_grid("wm", wm, &grid.w_m)?;
            in_grid("d", d, &grid.d)?;
            in_grid("factory", i, &grid.factory_i)?;
            if d.is_some_and(|d| d % 2 == 0) {
                return Err(CliError::Usage("--d must be odd".into()));
            }
            let a2 = match a2 {
                Some(a) if a.fract() != 0.0 => {
                    return Err(CliError::Usage("--alpha2 must be an integer when other parameters are searched".into()))
                }
                Some(a) => Some(a as u32),
                None => None,
            };
            in_grid("alpha2", a2, &grid.alpha_sq)?;
            let space = SearchSpace {
                w_e: we.map_or(grid.w_e.clone(), |v| v..=v),
                w_m: wm.map_or(grid.w_m.clone(), |v| v..=v),
                alpha_sq: a2.map_or(grid.alpha_sq.clone(), |v| v..=v),
                d: d.map_or(grid.d.clone(), |v| v..=v),
                factory_i: i.map_or(grid.factory_i.clone(), |v| v..=v),
            };
            optimize_in(n, &err, objective(s)?, &s.table, &space)?.best
        }
    };
    Ok(output::estimate(s.format, config, &estimate)?.into())
}

fn cmd_optimize(s: &Settings) -> Result<Rendered, CliError> {
    let n = require(s.cfg.n, "n")?;
    let objective = objective(s)?;
    let err = s.err_params(PLACEHOLDER_ALPHA_SQ)?;
    let mut config = s.base_config("optimize");
    config.insert("n".into(), json!(n));
    config.insert("objective".into(), json!(objective.tag()));
    let result = optimize_in(n, &err, objective, &s.table, &SearchSpace::default())?;
    Ok(output::optimization(s.format, config, &result)?.into())
}

fn cmd_table(s: &Settings) -> Result<Rendered, CliError> {
    let n_list = s.cfg.n_list.clone().unwrap_or_default();
    let objective = objective(s)?;
    let err = s.err_params(PLACEHOLDER_ALPHA_SQ)?;
    let mut config = s.base_config("table");
    config.insert("n_list".into(), json!(n_list));
    config.insert("objective".into(), json!(objective.tag()));
    let rows: Vec<TableRow<f64>> = emit_results_table_in(&n_list, &err, objective, &s.table, &SearchSpace::default())?;
    Ok(output::table(s.format, config, &rows)?.into())
}

fn cmd_verify(s: &Settings, inject_fault: bool) -> Result<Rendered, CliError> {
    let prime = s.cfg.prime.unwrap_or_default();
    let suite = s.cfg.suite.unwrap_or_default();
    let seed = s.cfg.seed.unwrap_or(0);
    let primes: Vec<u64> = match prime {
        PrimeArg::P7 => vec![7],
        PrimeArg::P13 => vec![13],
        PrimeArg::Auto => verify::SMALL_PRIMES.to_vec(),
    };
    let suites = suite.suites();
    let random = (prime == PrimeArg::Auto).then_some(seed);
    let report = verify::run_verification(&suites, &primes, random, inject_fault)?;
    let mut config = Map::new();
    config.insert("command".into(), json!("verify-circuits"));
    config.insert("prime".into(), json!(prime.tag()));
    config.insert("suite".into(), json!(suite.tag()));
    config.insert("seed".into(), json!(seed));
    config.insert("inject_fault".into(), json!(inject_fault));
    let bytes = output::verification(s.format, config, &report)?;
    let failure = report.first_failure().map(|o| {
        let cx = o.counterexample.as_ref().expect("failed outcome carries a counterexample");
        format!("suite {} at p = {}: {cx}", o.suite.tag(), o.prime)
    });
    Ok(Rendered { bytes, failure })
}

fn cmd_qec_sample(s: &Settings) -> Result<Rendered, CliError> {
    let c = &s.cfg;
    let d = require(c.d, "d")?;
    let alpha2 = require(c.alpha2, "alpha2")?;
    let trials = c.trials.unwrap_or(DEFAULT_TRIALS);
    let seed = c.seed.unwrap_or(0);
    if trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let err = s.err_params(alpha2)?;
    let rate = qecsim::logical_z_rate(d as usize, &err, trials, seed)?;
    let record = qecsim::QecRecord::new(&err, &rate);
    let mut config = s.base_config("qec-sample");
    config.insert("d".into(), json!(d));
    config.insert("alpha2".into(), json!(alpha2));
    config.insert("trials".into(), json!(trials));
    config.insert("seed".into(), json!(seed));
    Ok(output::qec(s.format, config, &record)?.into())
}
