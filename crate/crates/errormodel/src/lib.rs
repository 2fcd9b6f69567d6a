//! Error model of a repetition-cat-qubit processor.
//!
//! Phase-flip error tables of the physical gates, the per-cycle logical
//! error rate of the repetition code, the magic-state factory table and the
//! physical-qubit accounting of the processor layout.
//!
//! The formulas are generic over the floating-point scalar through
//! [`num_traits::Float`]; [`ErrorParams64`] and [`ErrorParams32`] are the
//! concrete instantiations. Times are expressed in units of `1/κ₂` unless a
//! field says otherwise.

mod factory;
mod layout;
mod logical;
mod physical;

pub use factory::{
    factory_lookup, factory_table, parse_factory_csv, read_factory_csv, FactoryRow, FactoryRow64, FactoryTable,
    FACTORY_CSV_HEADER,
};
pub use layout::{layout_qubits, logical_qubit_count, LayoutBreakdown, LayoutSpec};
pub use logical::{logical_error_rate, LogicalErrorRate};
pub use physical::{ccx_errors, physical_errors, Gate, GateErrors, PauliTerm, CCX_TIME_PHOTONS, SLOW_CNOT_TIME_PHOTONS};

use num_traits::Float;

/// Errors raised by the error model.
#[derive(Debug, thiserror::Error)]
pub enum ErrorModelError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown gate tag `{0}`")]
    UnknownGate(String),
    #[error("factory index {index} out of range (table has {len} rows)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("factory table: {0}")]
    FactoryTable(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, ErrorModelError>;

/// Physical noise knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorParams<T> {
    /// Ratio `κ₁/κ₂` of single-photon loss to two-photon dissipation.
    pub kappa_ratio: T,
    /// Mean photon number `α²` of every cat qubit.
    pub alpha_sq: T,
    /// Repetition-code cycle time in seconds.
    pub cycle_time: T,
}

pub type ErrorParams64 = ErrorParams<f64>;
pub type ErrorParams32 = ErrorParams<f32>;

/// Default loss ratio `κ₁/κ₂`.
pub const DEFAULT_KAPPA_RATIO: f64 = 1e-5;
/// Default repetition-code cycle time in seconds.
pub const DEFAULT_CYCLE_TIME: f64 = 500e-9;

impl<T: Float> ErrorParams<T> {
    /// Validated constructor.
    pub fn new(kappa_ratio: T, alpha_sq: T, cycle_time: T) -> Result<Self> {
        let p = ErrorParams { kappa_ratio, alpha_sq, cycle_time };
        p.validate()?;
        Ok(p)
    }

    /// Parameters with the default cycle time.
    pub fn with_ratio(kappa_ratio: T, alpha_sq: T) -> Result<Self> {
        Self::new(kappa_ratio, alpha_sq, constant(DEFAULT_CYCLE_TIME))
    }

    /// Copy with another photon number.
    pub fn with_alpha_sq(&self, alpha_sq: T) -> Result<Self> {
        Self::new(self.kappa_ratio, alpha_sq, self.cycle_time)
    }

    /// Checks that every field is finite and strictly positive.
    pub fn validate(&self) -> Result<()> {
        let ok = |v: T| v.is_finite() && v > T::zero();
        if !ok(self.kappa_ratio) {
            return Err(ErrorModelError::Domain("kappa_ratio must be finite and > 0".into()));
        }
        if !ok(self.alpha_sq) {
            return Err(ErrorModelError::Domain("alpha_sq must be finite and > 0".into()));
        }
        if !ok(self.cycle_time) {
            return Err(ErrorModelError::Domain("cycle_time must be finite and > 0".into()));
        }
        Ok(())
    }
}

pub(crate) fn constant<T: Float>(v: f64) -> T {
    T::from(v).expect("constant representable in the scalar type")
}
