//! Logical phase-flip rate estimation.

use errormodel::ErrorParams;
use num_traits::{Float, FloatConst};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{check_distance, decode, simulate, NoiseModel, QecError, Result};

/// Random stream of trial `index` under `master` seed.
pub fn trial_rng(master: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng
}

/// Per-cycle logical rate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogicalRate {
    pub d: usize,
    pub trials: u64,
    pub failures: u64,
    pub per_cycle: f64,
    pub stderr: f64,
}

/// Serialized form of one estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QecRecord {
    pub d: usize,
    pub alpha_sq: f64,
    pub kappa_ratio: f64,
    pub trials: u64,
    pub p_zl_per_cycle: f64,
    pub stderr: f64,
}

impl QecRecord {
    pub fn new<T: Float>(params: &ErrorParams<T>, rate: &LogicalRate) -> Self {
        QecRecord {
            d: rate.d,
            alpha_sq: params.alpha_sq.to_f64().unwrap_or(f64::NAN),
            kappa_ratio: params.kappa_ratio.to_f64().unwrap_or(f64::NAN),
            trials: rate.trials,
            p_zl_per_cycle: rate.per_cycle,
            stderr: rate.stderr,
        }
    }
}

/// Whether trial `index` ends in a logical phase flip after decoding.
pub fn trial_fails<T: Float>(d: usize, noise: &NoiseModel<T>, master: u64, index: u64) -> Result<bool> {
    let sample = simulate(d, noise, &mut trial_rng(master, index), &[])?;
    let correction = decode(&sample.history);
    Ok(sample.residual[0] ^ correction[0])
}

/// Estimates the logical phase-flip probability per cycle over `trials`
/// independent memory experiments of `d` rounds each.
///
/// Trials run on the current rayon pool; the result does not depend on its
/// size.
pub fn logical_z_rate<T: Float + FloatConst + Send + Sync>(
    d: usize,
    params: &ErrorParams<T>,
    trials: u64,
    seed: u64,
) -> Result<LogicalRate> {
    check_distance(d)?;
    if trials == 0 {
        return Err(QecError::Domain("trials must be positive".into()));
    }
    let noise = NoiseModel::from_params(params)?;
    let failures = (0..trials)
        .into_par_iter()
        .map(|i| trial_fails(d, &noise, seed, i).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let p = failures as f64 / trials as f64;
    let stderr = (p * (1.0 - p) / trials as f64).sqrt() / d as f64;
    Ok(LogicalRate { d, trials, failures, per_cycle: p / d as f64, stderr })
}
