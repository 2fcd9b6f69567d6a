//! Per-cycle logical error rate of the repetition code.

use num_traits::Float;

use crate::{constant, ErrorModelError, ErrorParams, Result};

/// Prefactor of the phase-flip term.
const PHASE_PREFACTOR: f64 = 5.6e-2;
/// Exponent of `α²` in the threshold ratio.
const PHOTON_EXPONENT: f64 = 0.86;
/// Threshold value of `(α²)^0.86 · κ₁/κ₂`.
const THRESHOLD: f64 = 1.3e-2;
/// Bit-flip prefactor of a fast CNOT.
const BIT_PREFACTOR: f64 = 0.50;

/// Per-cycle logical error probability split into its two addends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogicalErrorRate<T> {
    /// Logical phase flips from physical phase flips.
    pub phase: T,
    /// Logical bit flips from physical CNOT bit flips.
    pub bit: T,
}

impl<T: Float> LogicalErrorRate<T> {
    pub fn total(&self) -> T {
        self.phase + self.bit
    }
}

/// Logical error probability per cycle of a distance-`d` repetition code:
/// `5.6e-2·((α²)^0.86·κ₁/κ₂ / 1.3e-2)^((d+1)/2) + 2(d−1)·0.50·e^(−2α²)`.
///
/// `d` must be odd; `d = 1` yields the bare phase term and no bit term.
pub fn logical_error_rate<T: Float>(params: &ErrorParams<T>, d: u32) -> Result<LogicalErrorRate<T>> {
    if d.is_multiple_of(2) {
        return Err(ErrorModelError::Domain(format!("code distance must be odd, got {d}")));
    }
    let ratio = params.alpha_sq.powf(constant(PHOTON_EXPONENT)) * params.kappa_ratio / constant(THRESHOLD);
    let phase = constant::<T>(PHASE_PREFACTOR) * ratio.powi(d.div_ceil(2) as i32);
    let bit = constant::<T>(2.0 * f64::from(d - 1) * BIT_PREFACTOR) * (-(constant::<T>(2.0) * params.alpha_sq)).exp();
    Ok(LogicalErrorRate { phase, bit })
}
