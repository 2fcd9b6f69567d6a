//! Results table over several problem sizes.

use std::io::Write;

use errormodel::{factory_table, ErrorParams, FactoryTable};
use num_traits::{Float, FloatConst};
use serde::Serialize;

use crate::{optimize_in, Objective, ResourceEstimate, Result, SearchSpace};

/// One row of the results table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow<T> {
    pub n: usize,
    pub n_e: usize,
    pub w_e: usize,
    pub w_m: usize,
    pub alpha_sq: T,
    pub d: u32,
    pub factory_i: usize,
    pub nb_factories: u64,
    pub factory_qubits: u64,
    pub physical_qubits: u64,
    /// Seconds per run.
    pub t_run: T,
    /// Expected seconds to success.
    pub t_exp: T,
    pub logical_qubits: u64,
}

impl<T: Copy> TableRow<T> {
    /// Row describing one estimate.
    pub fn from_estimate(e: &ResourceEstimate<T>) -> Self {
        TableRow {
            n: e.params.n,
            n_e: e.params.n_e,
            w_e: e.params.w_e,
            w_m: e.params.w_m,
            alpha_sq: e.params.alpha_sq,
            d: e.params.d,
            factory_i: e.params.factory_i,
            nb_factories: e.nb_factories,
            factory_qubits: e.factory_qubits,
            physical_qubits: e.physical_qubits,
            t_run: e.t_run,
            t_exp: e.t_exp,
            logical_qubits: e.logical_qubits,
        }
    }
}

/// Column names of [`write_table_csv`].
pub const TABLE_CSV_HEADER: [&str; 13] = [
    "n",
    "n_e",
    "w_e",
    "w_m",
    "alpha_sq",
    "d",
    "factory_i",
    "nb_factories",
    "factory_qubits",
    "physical_qubits",
    "t_run",
    "t_exp",
    "logical_qubits",
];

/// Optimal row for every `n` over the default grid.
pub fn emit_results_table<T>(n_list: &[usize], err: &ErrorParams<T>) -> Result<Vec<TableRow<T>>>
where
    T: Float + FloatConst + Send + Sync,
{
    emit_results_table_in(n_list, err, Objective::default(), &factory_table(), &SearchSpace::default())
}

/// Optimal row for every `n` over `space`.
pub fn emit_results_table_in<T>(
    n_list: &[usize],
    err: &ErrorParams<T>,
    objective: Objective,
    table: &FactoryTable<T>,
    space: &SearchSpace,
) -> Result<Vec<TableRow<T>>>
where
    T: Float + FloatConst + Send + Sync,
{
    n_list
        .iter()
        .map(|&n| {
            Ok(TableRow::from_estimate(&optimize_in(n, err, objective, table, space)?.best))
        })
        .collect()
}

/// Writes `rows` as CSV with the header [`TABLE_CSV_HEADER`], also when empty.
pub fn write_table_csv<T: Serialize, W: Write>(rows: &[TableRow<T>], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(TABLE_CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
