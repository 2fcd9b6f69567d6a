//! Cost model of one parameter point.

use errormodel::{
    layout_qubits, logical_error_rate, logical_qubit_count, ErrorParams, FactoryTable, LayoutBreakdown, LayoutSpec,
};
use num_traits::{Float, FloatConst};
use revsim::GateCounts;
use serde::Serialize;

use crate::{EstimatorError, Result};

/// A CNOT-type logical operation lasts `d + CNOT_EXTRA_CYCLES` cycles.
pub const CNOT_EXTRA_CYCLES: u64 = 2;
/// A teleported Toffoli lasts `TOFFOLI_CYCLES_PER_DISTANCE · d` cycles.
pub const TOFFOLI_CYCLES_PER_DISTANCE: u64 = 9;
/// Largest number of magic-state factories a layout may hold.
pub const MAX_FACTORIES: u64 = 1000;

/// One point of the parameter space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlgoParams<T> {
    /// Bits of the field prime.
    pub n: usize,
    /// Total exponent-register bits, `2n`.
    pub n_e: usize,
    pub w_e: usize,
    pub w_m: usize,
    pub alpha_sq: T,
    /// Code distance of the computation.
    pub d: u32,
    /// Row of the factory table.
    pub factory_i: usize,
}

pub type AlgoParams64 = AlgoParams<f64>;

impl<T: Float> AlgoParams<T> {
    pub fn new(n: usize, w_e: usize, w_m: usize, alpha_sq: T, d: u32, factory_i: usize) -> Self {
        AlgoParams { n, n_e: 2 * n, w_e, w_m, alpha_sq, d, factory_i }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(EstimatorError::Domain(m));
        if self.n < 3 {
            return bad(format!("n = {} must be at least 3", self.n));
        }
        if self.n_e != 2 * self.n {
            return bad(format!("n_e = {} must equal 2n = {}", self.n_e, 2 * self.n));
        }
        if self.w_e == 0 || self.w_e > self.n.min(32) {
            return bad(format!("w_e = {} outside [1, {}]", self.w_e, self.n.min(32)));
        }
        if self.w_m == 0 || self.w_m > self.n.min(10) {
            return bad(format!("w_m = {} outside [1, {}]", self.w_m, self.n.min(10)));
        }
        let a2 = self.alpha_sq.to_f64().unwrap_or(f64::NAN);
        if !(4.0..=30.0).contains(&a2) {
            return bad(format!("alpha_sq = {a2} outside [4, 30]"));
        }
        if self.d.is_multiple_of(2) || !(3..=31).contains(&self.d) {
            return bad(format!("d = {} must be odd in [3, 31]", self.d));
        }
        Ok(())
    }
}

/// Gate tallies of the logical circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GateTally {
    pub toffoli: u64,
    pub cnot_ops: u64,
    pub cnot_pairs: u64,
    pub preps: u64,
    pub measurements: u64,
    /// Peak number of simultaneously live logical qubits in the counted circuit.
    pub peak_qubits: u64,
}

impl From<&GateCounts> for GateTally {
    fn from(c: &GateCounts) -> Self {
        GateTally {
            toffoli: c.toffoli,
            cnot_ops: c.multi_cnot_ops,
            cnot_pairs: c.cnot_pairs,
            preps: c.preps,
            measurements: c.measurements,
            peak_qubits: c.alloc_high_water,
        }
    }
}

/// Code cycles per operation kind and in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleBreakdown {
    pub per_cnot: u64,
    pub per_toffoli: u64,
    pub per_prep_meas: u64,
    pub cnot: u64,
    pub toffoli: u64,
    pub prep_meas: u64,
    pub total: u64,
}

/// Expected number of failures, itemized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorBudget<T> {
    /// Logical phase flips of idling and active logical qubits.
    pub memory_phase: T,
    /// Logical bit flips of idling and active logical qubits.
    pub memory_bit: T,
    /// Errors of consumed magic states.
    pub factory: T,
    pub total: T,
}

/// Declares which parts of the model are calibrated rather than derived.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelInfo {
    pub timing: &'static str,
    pub factory_footprint: &'static str,
    pub error_budget: &'static str,
}

impl Default for ModelInfo {
    fn default() -> Self {
        ModelInfo {
            timing: "calibrated: CNOT-type d+2 cycles, Toffoli 9d cycles, preparation and measurement d cycles, sequential",
            factory_footprint: "calibrated: 5 rows of 2d_f-1 qubits per factory",
            error_budget: "p_success = exp(-(logical_qubits * total_cycles * eps_L + toffoli * factory_error))",
        }
    }
}

/// Itemized contributions of an estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Breakdown<T> {
    pub gates: GateTally,
    pub cycles: CycleBreakdown,
    pub error: ErrorBudget<T>,
    pub layout: LayoutBreakdown,
    /// Mean seconds between two accepted states of one factory.
    pub factory_interval: T,
    /// Seconds taken by one teleported Toffoli.
    pub toffoli_time: T,
}

/// Resources of one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResourceEstimate<T> {
    pub params: AlgoParams<T>,
    pub logical_qubits: u64,
    pub nb_factories: u64,
    pub factory_qubits: u64,
    pub physical_qubits: u64,
    /// Seconds per run.
    pub t_run: T,
    pub p_success: T,
    /// Expected seconds until one run succeeds.
    pub t_exp: T,
    pub breakdown: Breakdown<T>,
    pub model: ModelInfo,
}

pub type ResourceEstimate64 = ResourceEstimate<f64>;

fn scalar<T: Float>(v: u64) -> T {
    T::from(v).expect("count representable")
}

/// Estimates the resources of `params`. The photon number of `err` is
/// replaced by `params.alpha_sq`.
pub fn estimate<T: Float + FloatConst>(
    params: &AlgoParams<T>,
    err: &ErrorParams<T>,
    table: &FactoryTable<T>,
) -> Result<ResourceEstimate<T>> {
    params.validate()?;
    let counts = qarith::count_shor(params.n, params.w_e, params.w_m)?;
    estimate_with_counts(params, err, table, &counts)
}

/// As [`estimate`] with the gate counts of the circuit supplied.
pub fn estimate_with_counts<T: Float + FloatConst>(
    params: &AlgoParams<T>,
    err: &ErrorParams<T>,
    table: &FactoryTable<T>,
    counts: &GateCounts,
) -> Result<ResourceEstimate<T>> {
    params.validate()?;
    let err = err.with_alpha_sq(params.alpha_sq)?;
    let row = table.get(params.factory_i)?;
    let d = u64::from(params.d);

    let per_cnot = d + CNOT_EXTRA_CYCLES;
    let per_toffoli = TOFFOLI_CYCLES_PER_DISTANCE * d;
    let per_prep_meas = d;
    let cnot = counts.multi_cnot_ops * per_cnot;
    let toffoli = counts.toffoli * per_toffoli;
    let prep_meas = (counts.preps + counts.measurements) * per_prep_meas;
    let cycles = CycleBreakdown { per_cnot, per_toffoli, per_prep_meas, cnot, toffoli, prep_meas, total: cnot + toffoli + prep_meas };
    let t_run = scalar::<T>(cycles.total) * err.cycle_time;

    let toffoli_time = scalar::<T>(per_toffoli) * err.cycle_time;
    let factory_interval = row.mean_production_interval();
    let nb_factories = (factory_interval / toffoli_time).ceil().to_u64().unwrap_or(u64::MAX).max(1);
    if nb_factories > MAX_FACTORIES {
        return Err(EstimatorError::Infeasible(format!(
            "factory row {} needs {nb_factories} factories to keep up with one Toffoli every {} s (cap {MAX_FACTORIES})",
            params.factory_i,
            toffoli_time.to_f64().unwrap_or(f64::NAN),
        )));
    }

    let logical_qubits = logical_qubit_count(params.n as u64, params.w_e as u64);
    let eps = logical_error_rate(&err, params.d)?;
    let exposure = scalar::<T>(logical_qubits) * scalar::<T>(cycles.total);
    let memory_phase = exposure * eps.phase;
    let memory_bit = exposure * eps.bit;
    let factory = scalar::<T>(counts.toffoli) * row.error_prob;
    let total = memory_phase + memory_bit + factory;
    let p_success = (-total).exp();
    if !(p_success > T::zero()) {
        return Err(EstimatorError::Infeasible(format!(
            "expected error count {} leaves no chance of success",
            total.to_f64().unwrap_or(f64::NAN)
        )));
    }

    let layout = layout_qubits(LayoutSpec { nb_log: logical_qubits, nb_factories, d }, u64::from(row.d_f));
    Ok(ResourceEstimate {
        params: *params,
        logical_qubits,
        nb_factories,
        factory_qubits: layout.factories,
        physical_qubits: layout.total,
        t_run,
        p_success,
        t_exp: t_run / p_success,
        breakdown: Breakdown {
            gates: GateTally::from(counts),
            cycles,
            error: ErrorBudget { memory_phase, memory_bit, factory, total },
            layout,
            factory_interval,
            toffoli_time,
        },
        model: ModelInfo::default(),
    })
}
