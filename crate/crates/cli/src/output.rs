//! Report files written by `solve`.

use std::fs;
use std::path::{Path, PathBuf};

use admm_split::problem::encode_cmat;
use admm_split::{CMatrix, Convention, SolveReport};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::SCHEMA_VERSION;

pub const SOLUTION_FILE: &str = "solution.cmat";
pub const TRACE_FILE: &str = "trace.csv";
pub const LEDGER_FILE: &str = "ledger.csv";
pub const METRICS_FILE: &str = "metrics.json";

#[derive(Serialize)]
struct TraceRow {
    iteration: usize,
    primal_norm: f64,
    dual_norm: f64,
    objective: f64,
}

#[derive(Serialize)]
struct LedgerRow<'a> {
    node_id: usize,
    iteration: usize,
    received: u64,
    sent: u64,
    convention: &'a str,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct MetricsJson {
    pub schema_version: u32,
    pub method: String,
    /// `None` when the problem has no ground truth.
    pub nmse: Option<f64>,
    pub support_precision: Option<f64>,
    pub support_recall: Option<f64>,
    pub iterations_run: usize,
    pub objective: f64,
}

impl MetricsJson {
    pub fn from_report(r: &SolveReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            method: r.method.to_string(),
            nmse: r.metrics.map(|m| m.nmse),
            support_precision: r.metrics.map(|m| m.support_precision),
            support_recall: r.metrics.map(|m| m.support_recall),
            iterations_run: r.iterations_run,
            objective: r.objective,
        }
    }
}

fn csv_bytes<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory CSV write");
    }
    w.into_inner().expect("in-memory CSV flush")
}

pub fn trace_csv(r: &SolveReport) -> Vec<u8> {
    csv_bytes(r.trace.records().iter().map(|t| TraceRow {
        iteration: t.iteration,
        primal_norm: t.primal_norm,
        dual_norm: t.dual_norm,
        objective: t.objective,
    }))
}

/// One row per node per iteration. Node ids follow the solver's node
/// order: workers `i * N + j` first, then the central nodes.
pub fn ledger_csv(r: &SolveReport, convention: Convention) -> Vec<u8> {
    let nodes = r.ledger.nodes().len();
    csv_bytes((1..=r.ledger.iterations()).flat_map(|k| {
        (0..nodes).map(move |node| {
            let t = r.ledger.traffic(node, k);
            LedgerRow {
                node_id: node,
                iteration: k,
                received: t.received,
                sent: t.sent(convention),
                convention: convention.name(),
            }
        })
    }))
}

pub fn solution_cmat(r: &SolveReport) -> Vec<u8> {
    let col = CMatrix::new(r.solution.len(), 1, r.solution.as_slice().to_vec())
        .expect("solution is a column");
    encode_cmat(&col)
}

pub fn metrics_json(r: &SolveReport) -> Vec<u8> {
    let mut s =
        serde_json::to_string_pretty(&MetricsJson::from_report(r)).expect("metrics serialize");
    s.push('\n');
    s.into_bytes()
}

/// The four report files in a fixed order.
pub fn report_files(r: &SolveReport, convention: Convention) -> Vec<(&'static str, Vec<u8>)> {
    vec![
        (SOLUTION_FILE, solution_cmat(r)),
        (TRACE_FILE, trace_csv(r)),
        (LEDGER_FILE, ledger_csv(r, convention)),
        (METRICS_FILE, metrics_json(r)),
    ]
}

pub fn write_files(dir: &Path, files: &[(&str, Vec<u8>)]) -> CliResult<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    files
        .iter()
        .map(|(name, bytes)| {
            let path = dir.join(name);
            fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
            Ok(path)
        })
        .collect()
}

/// SHA-256 over every file name and its contents, in order.
pub fn fingerprint(files: &[(&str, Vec<u8>)]) -> String {
    let mut h = Sha256::new();
    for (name, bytes) in files {
        h.update(name.as_bytes());
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    format!("{:x}", h.finalize())
}
