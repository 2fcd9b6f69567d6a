//! Circuit-level phase-flip probabilities.

use errormodel::{physical_errors, ErrorParams, Gate};
use num_traits::{Float, FloatConst};

use crate::{QecError, Result};

/// Exclusive phase-flip events after a CNOT.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CnotNoise<T> {
    /// Flip of the control only.
    pub p_z1: T,
    /// Flip of the target only.
    pub p_z2: T,
    /// Flip of both.
    pub p_z1z2: T,
}

/// Phase-flip probabilities of every location of the cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel<T> {
    pub p_prep: T,
    pub p_meas: T,
    /// Flip of each data qubit during the idle step.
    pub p_idle: T,
    pub cnot: CnotNoise<T>,
}

pub type NoiseModel64 = NoiseModel<f64>;
pub type NoiseModel32 = NoiseModel<f32>;

impl<T: Float + FloatConst> NoiseModel<T> {
    /// Probabilities of the fast gates at the given physical parameters.
    pub fn from_params(params: &ErrorParams<T>) -> Result<Self> {
        params.validate()?;
        let one = |g: Gate| physical_errors(params, g).infidelity();
        let cnot = physical_errors(params, Gate::CnotFast);
        let get = |s: &str| cnot.probability(s).expect("CNOT table has all patterns");
        let model = NoiseModel {
            p_prep: one(Gate::Prep),
            p_meas: one(Gate::Meas),
            p_idle: params.alpha_sq * params.kappa_ratio,
            cnot: CnotNoise { p_z1: get("Z1"), p_z2: get("Z2"), p_z1z2: get("Z1Z2") },
        };
        model.validate()?;
        Ok(model)
    }
}

impl<T: Float> NoiseModel<T> {
    /// A model without errors.
    pub fn noiseless() -> Self {
        let z = T::zero();
        NoiseModel { p_prep: z, p_meas: z, p_idle: z, cnot: CnotNoise { p_z1: z, p_z2: z, p_z1z2: z } }
    }

    /// Checks every probability lies in `[0, 1)` and the CNOT events sum below one.
    pub fn validate(&self) -> Result<()> {
        let c = &self.cnot;
        let all = [self.p_prep, self.p_meas, self.p_idle, c.p_z1, c.p_z2, c.p_z1z2, c.p_z1 + c.p_z2 + c.p_z1z2];
        if all.iter().all(|&p| p >= T::zero() && p < T::one()) {
            Ok(())
        } else {
            Err(QecError::Domain("noise probabilities must lie in [0, 1)".into()))
        }
    }
}
