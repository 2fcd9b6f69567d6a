//! Monte-Carlo estimate of the logical phase-flip rate of the repetition
//! code.
//!
//! A distance-`d` code has `d` data cat qubits and `d − 1` ancillas, each
//! ancilla measuring `X_j X_{j+1}`. One cycle takes five steps: ancilla
//! preparation, a CNOT round to the left neighbours, an idle step, a CNOT
//! round to the right neighbours and the ancilla measurement. Only phase
//! flips are sampled; they are tracked as a Pauli frame and propagate from
//! the target to the control of every CNOT.
//!
//! [`NoiseModel64`] and [`NoiseModel32`] are the concrete instantiations of
//! the scalar-generic [`NoiseModel`].

mod circuit;
mod decoder;
mod noise;
mod rate;

pub use circuit::{sample_cycle_history, simulate, Injection, Sample, SyndromeHistory};
pub use decoder::{decode, detection_events, pair_weight, Defect, EXACT_MATCHING_LIMIT};
pub use noise::{CnotNoise, NoiseModel, NoiseModel32, NoiseModel64};
pub use rate::{logical_z_rate, trial_fails, trial_rng, LogicalRate, QecRecord};

/// Errors raised by the simulator.
#[derive(Debug, thiserror::Error)]
pub enum QecError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Model(#[from] errormodel::ErrorModelError),
}

pub type Result<T> = std::result::Result<T, QecError>;

pub(crate) fn check_distance(d: usize) -> Result<()> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(QecError::Domain(format!("distance must be odd and at least 3, got {d}")));
    }
    Ok(())
}
