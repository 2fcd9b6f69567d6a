//! Exhaustive search over the parameter grid.

use std::cmp::Ordering;
use std::ops::RangeInclusive;
use std::str::FromStr;

use errormodel::{factory_table, ErrorParams, FactoryTable};
use num_traits::{Float, FloatConst};
use rayon::prelude::*;
use serde::Serialize;

use crate::{estimate_with_counts, AlgoParams, EstimatorError, ResourceEstimate, Result};

/// Quantity minimized by the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// `α² · physical_qubits · t_exp`.
    #[default]
    PhotonsQubitsTime,
    /// `physical_qubits · t_exp`.
    QubitsTime,
    /// `t_exp`.
    ExpectedTime,
}

impl Objective {
    pub fn tag(self) -> &'static str {
        match self {
            Objective::PhotonsQubitsTime => "photons_qubits_time",
            Objective::QubitsTime => "qubits_time",
            Objective::ExpectedTime => "expected_time",
        }
    }

    pub fn value<T: Float>(self, e: &ResourceEstimate<T>) -> T {
        let qubits = T::from(e.physical_qubits).expect("count representable");
        match self {
            Objective::PhotonsQubitsTime => e.params.alpha_sq * qubits * e.t_exp,
            Objective::QubitsTime => qubits * e.t_exp,
            Objective::ExpectedTime => e.t_exp,
        }
    }
}

impl FromStr for Objective {
    type Err = EstimatorError;

    fn from_str(s: &str) -> Result<Self> {
        [Objective::PhotonsQubitsTime, Objective::QubitsTime, Objective::ExpectedTime]
            .into_iter()
            .find(|o| o.tag() == s)
            .ok_or_else(|| EstimatorError::Domain(format!("unknown objective `{s}`")))
    }
}

/// Inclusive parameter ranges scanned by [`optimize_in`]. Even distances are
/// skipped and window widths are clipped to the field size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpace {
    pub w_e: RangeInclusive<usize>,
    pub w_m: RangeInclusive<usize>,
    pub alpha_sq: RangeInclusive<u32>,
    pub d: RangeInclusive<u32>,
    pub factory_i: RangeInclusive<usize>,
}

impl Default for SearchSpace {
    fn default() -> Self {
        SearchSpace { w_e: 1..=32, w_m: 1..=10, alpha_sq: 4..=30, d: 3..=31, factory_i: 0..=14 }
    }
}

impl SearchSpace {
    /// `(w_e, w_m)` pairs valid at field size `n`, in lexicographic order.
    pub fn windows(&self, n: usize) -> Vec<(usize, usize)> {
        let we_hi = (*self.w_e.end()).min(n);
        let wm_hi = (*self.w_m.end()).min(n);
        let mut out = Vec::new();
        for w_e in *self.w_e.start()..=we_hi {
            for w_m in *self.w_m.start()..=wm_hi {
                out.push((w_e, w_m));
            }
        }
        out
    }

    fn distances(&self) -> impl Iterator<Item = u32> + '_ {
        self.d.clone().filter(|d| d % 2 == 1)
    }

    /// Number of points scanned at field size `n`.
    pub fn size(&self, n: usize) -> usize {
        self.windows(n).len() * self.alpha_sq.clone().count() * self.distances().count() * self.factory_i.clone().count()
    }
}

/// Best point of a search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult<T> {
    pub n: usize,
    pub objective: Objective,
    pub objective_value: T,
    pub best: ResourceEstimate<T>,
    /// Points evaluated.
    pub evaluated: u64,
    /// Points that were feasible.
    pub feasible: u64,
}

pub type OptimizationResult64 = OptimizationResult<f64>;

type Key = (usize, usize, u32, u32, usize);

fn key<T: Float>(p: &AlgoParams<T>) -> Key {
    let a2 = p.alpha_sq.to_u32().unwrap_or(u32::MAX);
    (p.w_e, p.w_m, a2, p.d, p.factory_i)
}

struct Candidate<T> {
    value: T,
    estimate: ResourceEstimate<T>,
}

fn order<T: Float>(a: &Candidate<T>, b: &Candidate<T>) -> Ordering {
    a.value
        .partial_cmp(&b.value)
        .unwrap_or(Ordering::Equal)
        .then_with(|| key(&a.estimate.params).cmp(&key(&b.estimate.params)))
}

/// Best point over the default grid and the built-in factory table.
pub fn optimize<T>(n: usize, err: &ErrorParams<T>, objective: Objective) -> Result<OptimizationResult<T>>
where
    T: Float + FloatConst + Send + Sync,
{
    optimize_in(n, err, objective, &factory_table(), &SearchSpace::default())
}

/// Best point over `space` with the given factory table. Ties are broken
/// towards the lexicographically smallest `(w_e, w_m, α², d, i)`; the result
/// is independent of the size of the rayon pool.
pub fn optimize_in<T>(
    n: usize,
    err: &ErrorParams<T>,
    objective: Objective,
    table: &FactoryTable<T>,
    space: &SearchSpace,
) -> Result<OptimizationResult<T>>
where
    T: Float + FloatConst + Send + Sync,
{
    err.validate()?;
    let windows = space.windows(n);
    let counts = windows
        .par_iter()
        .map(|&(w_e, w_m)| qarith::count_shor(n, w_e, w_m).map_err(EstimatorError::from))
        .collect::<Result<Vec<_>>>()?;
    let last_row = table.len().saturating_sub(1);
    let rows: Vec<usize> = space.factory_i.clone().filter(|&i| i <= last_row).collect();
    let distances: Vec<u32> = space.distances().collect();

    let per_window: Vec<(u64, u64, Option<Candidate<T>>)> = windows
        .par_iter()
        .zip(counts.par_iter())
        .map(|(&(w_e, w_m), c)| {
            let mut evaluated = 0u64;
            let mut feasible = 0u64;
            let mut best: Option<Candidate<T>> = None;
            for a2 in space.alpha_sq.clone() {
                let alpha_sq = T::from(a2).expect("photon number representable");
                for &d in &distances {
                    for &i in &rows {
                        evaluated += 1;
                        let p = AlgoParams::new(n, w_e, w_m, alpha_sq, d, i);
                        let Ok(e) = estimate_with_counts(&p, err, table, c) else { continue };
                        feasible += 1;
                        let cand = Candidate { value: objective.value(&e), estimate: e };
                        if best.as_ref().is_none_or(|b| order(&cand, b) == Ordering::Less) {
                            best = Some(cand);
                        }
                    }
                }
            }
            (evaluated, feasible, best)
        })
        .collect();

    let evaluated = per_window.iter().map(|w| w.0).sum();
    let feasible = per_window.iter().map(|w| w.1).sum();
    let best = per_window
        .into_iter()
        .filter_map(|w| w.2)
        .min_by(order)
        .ok_or(EstimatorError::EmptyFeasibleSet)?;
    Ok(OptimizationResult { n, objective, objective_value: best.value, best: best.estimate, evaluated, feasible })
}
