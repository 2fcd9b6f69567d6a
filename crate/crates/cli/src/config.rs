//! Command-line grammar and the merged run configuration.

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::verify::Suite;
use crate::CliError;

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Primes of `verify-circuits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
pub enum PrimeArg {
    #[value(name = "7")]
    #[serde(rename = "7")]
    P7,
    #[value(name = "13")]
    #[serde(rename = "13")]
    P13,
    /// Both small primes exhaustively, plus random 8 to 12 bit primes seeded
    /// by `--seed`.
    #[default]
    #[value(name = "auto")]
    #[serde(rename = "auto")]
    Auto,
}

impl PrimeArg {
    pub fn tag(self) -> &'static str {
        match self {
            PrimeArg::P7 => "7",
            PrimeArg::P13 => "13",
            PrimeArg::Auto => "auto",
        }
    }
}

/// Suites of `verify-circuits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteArg {
    Adders,
    Modular,
    Montgomery,
    Kaliski,
    Ecc,
    #[default]
    All,
}

impl SuiteArg {
    pub fn tag(self) -> &'static str {
        match self {
            SuiteArg::All => "all",
            other => other.suites()[0].tag(),
        }
    }

    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Adders => vec![Suite::Adders],
            SuiteArg::Modular => vec![Suite::Modular],
            SuiteArg::Montgomery => vec![Suite::Montgomery],
            SuiteArg::Kaliski => vec![Suite::Kaliski],
            SuiteArg::Ecc => vec![Suite::Ecc],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

const OBJECTIVES: [&str; 3] = ["photons_qubits_time", "qubits_time", "expected_time"];

/// Resource estimation for elliptic-curve discrete logarithms on cat-qubit
/// processors.
#[derive(Debug, Parser)]
#[command(name = "catshor", version)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags accepted by every command.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON file of settings; flags take precedence over it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Ratio κ₁/κ₂ of single-photon loss to two-photon dissipation [default: 1e-5].
    #[arg(long, global = true)]
    pub kappa_ratio: Option<f64>,
    /// Code-cycle time in nanoseconds [default: 500].
    #[arg(long, global = true)]
    pub cycle_ns: Option<f64>,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output encoding [default: json].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; 0 uses every core [default: 0].
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// CSV file replacing the built-in magic-state factory table.
    #[arg(long, global = true)]
    pub factory_table: Option<PathBuf>,
    /// Seed of every random choice [default: 0].
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Resources of one parameter point; unset parameters are optimized.
    Estimate(EstimateArgs),
    /// Best parameter point over the full grid.
    Optimize(OptimizeArgs),
    /// Best parameter points for a list of field sizes.
    Table(TableArgs),
    /// Oracle-equivalence suites of the arithmetic circuits.
    VerifyCircuits(VerifyArgs),
    /// Monte Carlo logical phase-flip rate of the repetition code.
    QecSample(QecArgs),
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Bits of the field prime.
    #[arg(long)]
    pub n: Option<usize>,
    /// Code distance.
    #[arg(long)]
    pub d: Option<u32>,
    /// Mean photon number α².
    #[arg(long)]
    pub alpha2: Option<f64>,
    /// Window width of the scalar multiplication.
    #[arg(long)]
    pub we: Option<usize>,
    /// Window width of the Montgomery multiplication.
    #[arg(long)]
    pub wm: Option<usize>,
    /// Row of the magic-state factory table.
    #[arg(long)]
    pub factory: Option<usize>,
    /// Quantity minimized over unset parameters [default: photons_qubits_time].
    #[arg(long, value_parser = OBJECTIVES)]
    pub objective: Option<String>,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Bits of the field prime.
    #[arg(long)]
    pub n: Option<usize>,
    /// Quantity minimized [default: photons_qubits_time].
    #[arg(long, value_parser = OBJECTIVES)]
    pub objective: Option<String>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Field sizes, comma separated; may be empty.
    #[arg(long, num_args = 0.., value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Quantity minimized [default: photons_qubits_time].
    #[arg(long, value_parser = OBJECTIVES)]
    pub objective: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Field prime of the exhaustive suites [default: auto].
    #[arg(long, value_enum)]
    pub prime: Option<PrimeArg>,
    /// Suite to run [default: all].
    #[arg(long, value_enum)]
    pub suite: Option<SuiteArg>,
    /// Corrupts every checked output; the run must then fail.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct QecArgs {
    /// Odd code distance, at least 3.
    #[arg(long)]
    pub d: Option<u32>,
    /// Mean photon number α².
    #[arg(long)]
    pub alpha2: Option<f64>,
    /// Number of memory experiments [default: 10000].
    #[arg(long)]
    pub trials: Option<u64>,
}

/// Settings of a run, as read from a `--config` file and then overridden by
/// flags. Keys irrelevant to the command are ignored; unknown keys are
/// rejected.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub kappa_ratio: Option<f64>,
    pub cycle_ns: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
    pub factory_table: Option<PathBuf>,
    pub seed: Option<u64>,
    pub n: Option<usize>,
    pub d: Option<u32>,
    pub alpha2: Option<f64>,
    pub we: Option<usize>,
    pub wm: Option<usize>,
    pub factory: Option<usize>,
    pub objective: Option<String>,
    pub n_list: Option<Vec<usize>>,
    pub trials: Option<u64>,
    pub prime: Option<PrimeArg>,
    pub suite: Option<SuiteArg>,
}

impl RunConfig {
    /// Reads a JSON settings file.
    pub fn from_file(path: &std::path::Path) -> Result<Self, CliError> {
        let file = File::open(path).map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))?;
        serde_json::from_reader(BufReader::new(file))
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }
}

fn overlay<T>(slot: &mut Option<T>, flag: &Option<T>)
where
    T: Clone,
{
    if flag.is_some() {
        slot.clone_from(flag);
    }
}

impl Cli {
    /// Flags over the `--config` file over nothing; defaults are applied by
    /// the commands.
    pub fn effective_config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.common.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        let c = &self.common;
        overlay(&mut cfg.kappa_ratio, &c.kappa_ratio);
        overlay(&mut cfg.cycle_ns, &c.cycle_ns);
        overlay(&mut cfg.out, &c.out);
        overlay(&mut cfg.format, &c.format);
        overlay(&mut cfg.workers, &c.workers);
        overlay(&mut cfg.factory_table, &c.factory_table);
        overlay(&mut cfg.seed, &c.seed);
        match &self.command {
            Command::Estimate(a) => {
                overlay(&mut cfg.n, &a.n);
                overlay(&mut cfg.d, &a.d);
                overlay(&mut cfg.alpha2, &a.alpha2);
                overlay(&mut cfg.we, &a.we);
                overlay(&mut cfg.wm, &a.wm);
                overlay(&mut cfg.factory, &a.factory);
                overlay(&mut cfg.objective, &a.objective);
            }
            Command::Optimize(a) => {
                overlay(&mut cfg.n, &a.n);
                overlay(&mut cfg.objective, &a.objective);
            }
            Command::Table(a) => {
                overlay(&mut cfg.n_list, &a.n);
                overlay(&mut cfg.objective, &a.objective);
            }
            Command::VerifyCircuits(a) => {
                overlay(&mut cfg.prime, &a.prime);
                overlay(&mut cfg.suite, &a.suite);
            }
            Command::QecSample(a) => {
                overlay(&mut cfg.d, &a.d);
                overlay(&mut cfg.alpha2, &a.alpha2);
                overlay(&mut cfg.trials, &a.trials);
            }
        }
        Ok(cfg)
    }
}
