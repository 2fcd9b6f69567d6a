//! Phase-flip error tables of the physical operations.

use std::fmt;
use std::str::FromStr;

use num_traits::{Float, FloatConst};

use crate::{constant, ErrorModelError, ErrorParams};

/// `α²κ₂T` of the slow CNOT, whose duration is `89/(α²κ₂)`.
pub const SLOW_CNOT_TIME_PHOTONS: f64 = 89.0;
/// `α²κ₂T` of the Toffoli gate used in magic-state preparation.
pub const CCX_TIME_PHOTONS: f64 = 89.0;

/// Physical operation whose error table is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    /// Preparation of `|+⟩` in time `1/κ₂`.
    Prep,
    /// `X`-basis measurement in time `1/κ₂`.
    Meas,
    /// CNOT in time `1/κ₂`.
    CnotFast,
    /// CNOT in time `89/(α²κ₂)`.
    CnotSlow,
    /// Toffoli in time `89/(α²κ₂)`.
    Ccx,
}

impl Gate {
    pub const ALL: [Gate; 5] = [Gate::Prep, Gate::Meas, Gate::CnotFast, Gate::CnotSlow, Gate::Ccx];

    pub fn tag(self) -> &'static str {
        match self {
            Gate::Prep => "prep",
            Gate::Meas => "meas",
            Gate::CnotFast => "cnot_fast",
            Gate::CnotSlow => "cnot_slow",
            Gate::Ccx => "ccx",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Gate {
    type Err = ErrorModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Gate::ALL
            .into_iter()
            .find(|g| g.tag() == s)
            .ok_or_else(|| ErrorModelError::UnknownGate(s.to_string()))
    }
}

/// Probability of one Pauli-Z pattern, e.g. `"Z1Z2"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerm<T> {
    pub support: &'static str,
    pub probability: T,
}

/// Error table of one operation.
#[derive(Debug, Clone, PartialEq)]
pub struct GateErrors<T> {
    pub gate: Gate,
    /// Duration in units of `1/κ₂`.
    pub duration: T,
    /// Mutually exclusive phase-flip patterns.
    pub phase_flips: Vec<PauliTerm<T>>,
    /// Bit-flip probability where the operation has one.
    pub bit_flip: Option<T>,
}

impl<T: Float> GateErrors<T> {
    /// `1 − F`, the total phase-flip probability.
    pub fn infidelity(&self) -> T {
        self.phase_flips.iter().fold(T::zero(), |acc, t| acc + t.probability)
    }

    /// Probability of the pattern with the given support.
    pub fn probability(&self, support: &str) -> Option<T> {
        self.phase_flips.iter().find(|t| t.support == support).map(|t| t.probability)
    }
}

fn term<T>(support: &'static str, probability: T) -> PauliTerm<T> {
    PauliTerm { support, probability }
}

/// Error table of `gate` at the given noise parameters.
pub fn physical_errors<T: Float + FloatConst>(params: &ErrorParams<T>, gate: Gate) -> GateErrors<T> {
    let a2 = params.alpha_sq;
    let k1 = params.kappa_ratio;
    let pi2 = T::PI() * T::PI();
    let two_a2 = constant::<T>(2.0) * a2;
    match gate {
        Gate::Prep | Gate::Meas => GateErrors {
            gate,
            duration: T::one(),
            phase_flips: vec![term("Z1", a2 * k1)],
            bit_flip: None,
        },
        Gate::CnotFast | Gate::CnotSlow => {
            let (t, bit) = if gate == Gate::CnotFast {
                (T::one(), constant::<T>(0.50))
            } else {
                (constant::<T>(SLOW_CNOT_TIME_PHOTONS) / a2, constant::<T>(0.02))
            };
            let loss = a2 * k1 * t;
            let half = loss / constant(2.0);
            GateErrors {
                gate,
                duration: t,
                phase_flips: vec![
                    term("Z1", loss + pi2 / (constant::<T>(64.0) * a2 * t)),
                    term("Z2", half),
                    term("Z1Z2", half),
                ],
                bit_flip: Some(bit * (-two_a2).exp()),
            }
        }
        Gate::Ccx => ccx_errors(params, constant::<T>(CCX_TIME_PHOTONS) / a2),
    }
}

/// Toffoli error table for an explicit gate time `t_star` (units of `1/κ₂`).
pub fn ccx_errors<T: Float + FloatConst>(params: &ErrorParams<T>, t_star: T) -> GateErrors<T> {
    let a2 = params.alpha_sq;
    let loss = a2 * params.kappa_ratio * t_star;
    let nonadiabatic = T::PI() * T::PI() / (constant::<T>(128.0) * a2 * t_star);
    let eighth = loss / constant(8.0);
    GateErrors {
        gate: Gate::Ccx,
        duration: t_star,
        phase_flips: vec![
            term("Z1", loss + nonadiabatic),
            term("Z2", loss + nonadiabatic),
            term("Z3", constant::<T>(5.0) * eighth),
            term("Z1Z2", nonadiabatic),
            term("Z1Z3", eighth),
            term("Z2Z3", eighth),
            term("Z1Z2Z3", eighth),
        ],
        bit_flip: None,
    }
}
