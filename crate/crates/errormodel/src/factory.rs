//! Magic-state factory parameters.

use std::io::Read;
use std::path::Path;

use num_traits::Float;
use serde::Deserialize;

use crate::{constant, ErrorModelError, Result};

/// One parameter set of a Toffoli magic-state factory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactoryRow<T> {
    /// Row index.
    pub i: usize,
    /// Code distance inside the factory.
    pub d_f: u32,
    /// Mean photon number inside the factory.
    pub alpha_sq_f: T,
    /// Logical error probability of one produced state.
    pub error_prob: T,
    /// Physical gate steps of one preparation attempt.
    pub steps: u64,
    /// Duration of one preparation attempt in seconds.
    pub prep_time: T,
    /// Probability that an attempt is accepted.
    pub acceptance: T,
}

pub type FactoryRow64 = FactoryRow<f64>;

impl<T: Float> FactoryRow<T> {
    /// Heralded rows may reject an attempt; deterministic rows never do.
    pub fn is_heralded(&self) -> bool {
        self.acceptance < T::one()
    }

    /// Mean time between two accepted states of one factory, in seconds.
    pub fn mean_production_interval(&self) -> T {
        self.prep_time / self.acceptance
    }
}

/// `(d_f, α², error, steps, time [s], acceptance)`.
const TABLE: [(u32, f64, f64, u64, f64, f64); 15] = [
    (3, 3.75, 1.05e-3, 23, 54.7e-6, 0.84),
    (3, 3.93, 1.02e-4, 29, 65.8e-6, 0.745),
    (3, 5.32, 8.14e-5, 35, 58.7e-6, 0.66),
    (5, 7.15, 4.62e-6, 46, 57.4e-6, 0.456),
    (5, 8.18, 7.00e-7, 53, 57.8e-6, 0.362),
    (5, 8.38, 5.36e-7, 60, 63.9e-6, 0.288),
    (7, 9.71, 6.14e-8, 73, 67.1e-6, 0.148),
    (7, 10.76, 8.40e-9, 81, 67.2e-6, 0.105),
    (7, 11.06, 5.16e-9, 89, 71.8e-6, 0.0727),
    (9, 11.64, 2.28e-9, 104, 79.7e-6, 0.0262),
    (9, 12.83, 2.30e-10, 113, 78.6e-6, 0.0154),
    (9, 13.44, 7.36e-11, 122, 81e-6, 0.00975),
    (19, 17.35, 7.90e-12, 9576, 4.92e-3, 1.0),
    (21, 18.94, 5.40e-13, 14112, 6.65e-3, 1.0),
    (23, 20.53, 3.74e-14, 21344, 9.27e-3, 1.0),
];

/// An ordered list of factory rows indexed from zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoryTable<T> {
    rows: Vec<FactoryRow<T>>,
}

impl<T: Float> FactoryTable<T> {
    /// Validates indices, acceptances and times.
    pub fn new(rows: Vec<FactoryRow<T>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(ErrorModelError::FactoryTable("no rows".into()));
        }
        for (k, r) in rows.iter().enumerate() {
            let bad = |what: &str| Err(ErrorModelError::FactoryTable(format!("row {k}: {what}")));
            if r.i != k {
                return bad(&format!("index {} out of sequence", r.i));
            }
            if !(r.acceptance > T::zero() && r.acceptance <= T::one()) {
                return bad("acceptance outside (0, 1]");
            }
            if !(r.prep_time > T::zero() && r.prep_time.is_finite()) {
                return bad("prep_time must be positive");
            }
            if !(r.error_prob >= T::zero() && r.error_prob < T::one()) {
                return bad("error_prob outside [0, 1)");
            }
            if r.d_f == 0 {
                return bad("d_f must be positive");
            }
        }
        Ok(FactoryTable { rows })
    }

    pub fn rows(&self) -> &[FactoryRow<T>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row `i`.
    pub fn get(&self, i: usize) -> Result<&FactoryRow<T>> {
        self.rows.get(i).ok_or(ErrorModelError::IndexOutOfRange { index: i, len: self.rows.len() })
    }
}

/// The built-in fifteen-row table.
pub fn factory_table<T: Float>() -> FactoryTable<T> {
    let rows = TABLE
        .iter()
        .enumerate()
        .map(|(i, &(d_f, a2, err, steps, time, acc))| FactoryRow {
            i,
            d_f,
            alpha_sq_f: constant(a2),
            error_prob: constant(err),
            steps,
            prep_time: constant(time),
            acceptance: constant(acc),
        })
        .collect();
    FactoryTable { rows }
}

/// Row `i` of the built-in table.
pub fn factory_lookup<T: Float>(i: usize) -> Result<FactoryRow<T>> {
    TABLE.get(i).ok_or(ErrorModelError::IndexOutOfRange { index: i, len: TABLE.len() })?;
    Ok(factory_table::<T>().rows[i])
}

/// Header expected on a factory-table CSV override.
pub const FACTORY_CSV_HEADER: [&str; 7] = ["i", "d_f", "alpha_sq_f", "error_prob", "steps", "prep_time_s", "acceptance"];

#[derive(Deserialize)]
struct CsvRow {
    i: usize,
    d_f: u32,
    alpha_sq_f: f64,
    error_prob: f64,
    steps: u64,
    prep_time_s: f64,
    acceptance: f64,
}

/// Parses a factory table from CSV with the header [`FACTORY_CSV_HEADER`].
pub fn parse_factory_csv<R: Read>(reader: R) -> Result<FactoryTable<f64>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header = rdr.headers()?.clone();
    if header.iter().ne(FACTORY_CSV_HEADER.iter().copied()) {
        return Err(ErrorModelError::FactoryTable(format!(
            "header mismatch: expected `{}`, found `{}`",
            FACTORY_CSV_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for rec in rdr.deserialize::<CsvRow>() {
        let r = rec?;
        rows.push(FactoryRow {
            i: r.i,
            d_f: r.d_f,
            alpha_sq_f: r.alpha_sq_f,
            error_prob: r.error_prob,
            steps: r.steps,
            prep_time: r.prep_time_s,
            acceptance: r.acceptance,
        });
    }
    FactoryTable::new(rows)
}

/// Reads a factory-table CSV file.
pub fn read_factory_csv(path: &Path) -> Result<FactoryTable<f64>> {
    let file = std::fs::File::open(path)
        .map_err(|e| ErrorModelError::FactoryTable(format!("{}: {e}", path.display())))?;
    parse_factory_csv(file)
}
