//! Rendering of command results as JSON, CSV or text.

use std::fmt::Write as _;

use estimator::{write_table_csv, OptimizationResult, ResourceEstimate, TableRow};
use qecsim::QecRecord;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::verify::{SuiteOutcome, VerifyReport};
use crate::{CliError, Format};

/// Version shared by every shipped schema.
pub const SCHEMA_VERSION: u32 = 1;

/// JSON wrapper of every result: the schema name, the settings that produced
/// the result and the result itself.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, R: Serialize> {
    pub schema: &'static str,
    pub schema_version: u32,
    pub config: Map<String, Value>,
    pub result: &'a R,
}

fn json<R: Serialize>(schema: &'static str, config: Map<String, Value>, result: &R) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(&Envelope { schema, schema_version: SCHEMA_VERSION, config, result })?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn rows_csv(rows: &[TableRow<f64>]) -> Result<Vec<u8>, CliError> {
    let mut bytes = Vec::new();
    write_table_csv(rows, &mut bytes)?;
    Ok(bytes)
}

fn text_lines(lines: &[(&str, String)]) -> Vec<u8> {
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in lines {
        let _ = writeln!(s, "{k:<width$}  {v}");
    }
    s.into_bytes()
}

fn estimate_lines(e: &ResourceEstimate<f64>) -> Vec<(&'static str, String)> {
    let p = &e.params;
    vec![
        ("n", p.n.to_string()),
        ("n_e", p.n_e.to_string()),
        ("w_e", p.w_e.to_string()),
        ("w_m", p.w_m.to_string()),
        ("alpha_sq", p.alpha_sq.to_string()),
        ("d", p.d.to_string()),
        ("factory_i", p.factory_i.to_string()),
        ("logical_qubits", e.logical_qubits.to_string()),
        ("nb_factories", e.nb_factories.to_string()),
        ("factory_qubits", e.factory_qubits.to_string()),
        ("physical_qubits", e.physical_qubits.to_string()),
        ("toffoli", e.breakdown.gates.toffoli.to_string()),
        ("cycles", e.breakdown.cycles.total.to_string()),
        ("t_run_hours", format!("{:.4}", e.t_run / 3600.0)),
        ("p_success", format!("{:.6}", e.p_success)),
        ("t_exp_hours", format!("{:.4}", e.t_exp / 3600.0)),
    ]
}

pub(crate) fn estimate(format: Format, config: Map<String, Value>, e: &ResourceEstimate<f64>) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => json("resource_estimate", config, e),
        Format::Csv => rows_csv(&[TableRow::from_estimate(e)]),
        Format::Text => Ok(text_lines(&estimate_lines(e))),
    }
}

pub(crate) fn optimization(
    format: Format,
    config: Map<String, Value>,
    r: &OptimizationResult<f64>,
) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => json("optimization_result", config, r),
        Format::Csv => rows_csv(&[TableRow::from_estimate(&r.best)]),
        Format::Text => {
            let mut lines = vec![
                ("objective", r.objective.tag().to_string()),
                ("objective_value", format!("{:e}", r.objective_value)),
                ("evaluated", r.evaluated.to_string()),
                ("feasible", r.feasible.to_string()),
            ];
            lines.extend(estimate_lines(&r.best));
            Ok(text_lines(&lines))
        }
    }
}

pub(crate) fn table(format: Format, config: Map<String, Value>, rows: &[TableRow<f64>]) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => json("results_table", config, &rows),
        Format::Csv => rows_csv(rows),
        Format::Text => {
            let mut s = format!(
                "{:>5} {:>5} {:>4} {:>4} {:>5} {:>3} {:>3} {:>6} {:>8} {:>9} {:>8} {:>8}\n",
                "n", "n_e", "w_e", "w_m", "alpha", "d", "i", "#fact", "logical", "physical", "t (h)", "t_exp (h)"
            );
            for r in rows {
                let _ = writeln!(
                    s,
                    "{:>5} {:>5} {:>4} {:>4} {:>5} {:>3} {:>3} {:>6} {:>8} {:>9} {:>8.3} {:>8.3}",
                    r.n,
                    r.n_e,
                    r.w_e,
                    r.w_m,
                    r.alpha_sq,
                    r.d,
                    r.factory_i,
                    r.nb_factories,
                    r.logical_qubits,
                    r.physical_qubits,
                    r.t_run / 3600.0,
                    r.t_exp / 3600.0
                );
            }
            Ok(s.into_bytes())
        }
    }
}

pub(crate) fn qec(format: Format, config: Map<String, Value>, record: &QecRecord) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => json("qec_record", config, record),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.serialize(record)?;
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
        Format::Text => Ok(text_lines(&[
            ("d", record.d.to_string()),
            ("alpha_sq", record.alpha_sq.to_string()),
            ("kappa_ratio", record.kappa_ratio.to_string()),
            ("trials", record.trials.to_string()),
            ("p_zl_per_cycle", format!("{:e}", record.p_zl_per_cycle)),
            ("stderr", format!("{:e}", record.stderr)),
        ])),
    }
}

fn outcome_rows(report: &VerifyReport) -> impl Iterator<Item = (&'static str, &SuiteOutcome)> {
    report
        .exhaustive
        .iter()
        .map(|o| ("exhaustive", o))
        .chain(report.random.iter().map(|o| ("random", o)))
}

pub(crate) fn verification(format: Format, config: Map<String, Value>, report: &VerifyReport) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => json("verify_report", config, report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "scope", "prime", "checks", "passed", "case", "inputs", "expected", "got"])?;
            for (scope, o) in outcome_rows(report) {
                let cx = o.counterexample.clone().unwrap_or_else(|| crate::verify::Counterexample {
                    case: String::new(),
                    inputs: String::new(),
                    expected: String::new(),
                    got: String::new(),
                });
                w.write_record([
                    o.suite.tag(),
                    scope,
                    &o.prime.to_string(),
                    &o.checks.to_string(),
                    &o.passed().to_string(),
                    &cx.case,
                    &cx.inputs,
                    &cx.expected,
                    &cx.got,
                ])?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
        Format::Text => {
            let mut s = format!("{:<11} {:<10} {:>5} {:>8}  result\n", "suite", "scope", "prime", "checks");
            for (scope, o) in outcome_rows(report) {
                let prime = if scope == "random" { "8-12b".to_string() } else { o.prime.to_string() };
                let status = if o.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{:<11} {:<10} {:>5} {:>8}  {status}", o.suite.tag(), scope, prime, o.checks);
                if let Some(cx) = &o.counterexample {
                    let _ = writeln!(s, "    counterexample: {cx}");
                }
            }
            let _ = writeln!(s, "{}", if report.passed { "all suites passed" } else { "verification FAILED" });
            Ok(s.into_bytes())
        }
    }
}
