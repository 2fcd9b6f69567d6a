//! Pauli-frame sampling of the stabilizer circuit.

use num_traits::Float;
use rand::Rng;

use crate::{check_distance, rate::trial_rng, NoiseModel, Result};

/// Stabilizer outcomes of `d` noisy rounds followed by one perfect round.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SyndromeHistory {
    d: usize,
    /// Row-major `(d − 1) × (d + 1)`: stabilizer `j`, round `t`.
    bits: Vec<bool>,
}

impl SyndromeHistory {
    /// An all-zero history.
    pub fn zeros(d: usize) -> Self {
        SyndromeHistory { d, bits: vec![false; (d - 1) * (d + 1)] }
    }

    pub fn distance(&self) -> usize {
        self.d
    }

    pub fn stabilizers(&self) -> usize {
        self.d - 1
    }

    pub fn rounds(&self) -> usize {
        self.d + 1
    }

    /// Outcome of stabilizer `j` in round `t`.
    pub fn get(&self, j: usize, t: usize) -> bool {
        self.bits[j * self.rounds() + t]
    }

    pub fn set(&mut self, j: usize, t: usize, v: bool) {
        let r = self.rounds();
        self.bits[j * r + t] = v;
    }

    pub fn is_trivial(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }
}

/// A data-qubit phase flip inserted at the start of a noisy round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Injection {
    pub round: usize,
    pub qubit: usize,
}

/// Outcome of one sampled memory experiment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub history: SyndromeHistory,
    /// Phase flips left on the data qubits before decoding.
    pub residual: Vec<bool>,
}

fn flip<T: Float, R: Rng>(rng: &mut R, p: T) -> bool {
    p > T::zero() && T::from(rng.gen::<f64>()).expect("f64 converts") < p
}

fn cnot<T: Float, R: Rng>(rng: &mut R, noise: &NoiseModel<T>, anc: &mut bool, data: &mut bool) {
    *anc ^= *data;
    let c = &noise.cnot;
    let u = T::from(rng.gen::<f64>()).expect("f64 converts");
    if u < c.p_z1 {
        *anc ^= true;
    } else if u < c.p_z1 + c.p_z2 {
        *data ^= true;
    } else if u < c.p_z1 + c.p_z2 + c.p_z1z2 {
        *anc ^= true;
        *data ^= true;
    }
}

/// Runs `d` noisy cycles and a perfect round, applying `injections` on top of
/// the sampled noise.
pub fn simulate<T: Float, R: Rng>(d: usize, noise: &NoiseModel<T>, rng: &mut R, injections: &[Injection]) -> Result<Sample> {
    check_distance(d)?;
    let mut data = vec![false; d];
    let mut history = SyndromeHistory::zeros(d);
    let mut anc = vec![false; d - 1];
    for t in 0..d {
        for inj in injections.iter().filter(|i| i.round == t) {
            data[inj.qubit] ^= true;
        }
        for a in anc.iter_mut() {
            *a = flip(rng, noise.p_prep);
        }
        for (j, a) in anc.iter_mut().enumerate() {
            cnot(rng, noise, a, &mut data[j]);
        }
        for q in data.iter_mut() {
            *q ^= flip(rng, noise.p_idle);
        }
        for (j, a) in anc.iter_mut().enumerate() {
            cnot(rng, noise, a, &mut data[j + 1]);
        }
        for (j, a) in anc.iter().enumerate() {
            history.set(j, t, *a ^ flip(rng, noise.p_meas));
        }
    }
    for j in 0..d - 1 {
        history.set(j, d, data[j] ^ data[j + 1]);
    }
    Ok(Sample { history, residual: data })
}

/// Samples one memory experiment from the trial stream of `seed`.
pub fn sample_cycle_history<T: Float>(d: usize, noise: &NoiseModel<T>, seed: u64) -> Result<Sample> {
    simulate(d, noise, &mut trial_rng(seed, 0), &[])
}
