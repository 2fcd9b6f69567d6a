//! Resource estimation for the elliptic-curve discrete logarithm on a
//! repetition-cat-qubit processor.
//!
//! [`estimate`] turns one parameter point into qubit counts, run time and
//! success probability; [`optimize`] scans the parameter grid for the point
//! minimizing an [`Objective`]; [`emit_results_table`] runs the search for a
//! list of problem sizes.
//!
//! Estimates are generic over the floating-point scalar; [`ResourceEstimate64`]
//! and [`AlgoParams64`] are the `f64` instantiations.

mod model;
mod search;
mod table;

pub use model::{
    estimate, estimate_with_counts, AlgoParams, AlgoParams64, Breakdown, CycleBreakdown, ErrorBudget, GateTally,
    ModelInfo, ResourceEstimate, ResourceEstimate64, CNOT_EXTRA_CYCLES, MAX_FACTORIES, TOFFOLI_CYCLES_PER_DISTANCE,
};
pub use search::{optimize, optimize_in, Objective, OptimizationResult, OptimizationResult64, SearchSpace};
pub use table::{emit_results_table, emit_results_table_in, write_table_csv, TableRow, TABLE_CSV_HEADER};

/// Errors raised by the estimator.
#[derive(Debug, thiserror::Error)]
pub enum EstimatorError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("no feasible point in the search space")]
    EmptyFeasibleSet,
    #[error(transparent)]
    Count(#[from] qarith::QarithError),
    #[error(transparent)]
    Model(#[from] errormodel::ErrorModelError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, EstimatorError>;
