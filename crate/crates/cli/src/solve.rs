//! `solve` and `compare`.

use std::path::PathBuf;

use admm_split::partition::make_partition;
use admm_split::{solve, Convention, MethodSpec, SensingProblem, SolveReport, SolverConfig};
use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::output::{fingerprint, report_files, write_files};
use crate::settings::SolverArgs;
use crate::source::ProblemArgs;
use crate::SCHEMA_VERSION;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum LedgerConvention {
    /// A broadcast counts once on the sender.
    SenderOnce,
    /// A broadcast counts once per receiving link.
    PerLink,
}

impl From<LedgerConvention> for Convention {
    fn from(c: LedgerConvention) -> Self {
        match c {
            LedgerConvention::SenderOnce => Convention::SenderOnceBroadcast,
            LedgerConvention::PerLink => Convention::PerLink,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Accept partitions whose blocks differ in size by one.
    #[arg(long)]
    pub ragged: bool,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Print a SHA-256 fingerprint of the outputs.
    #[arg(long)]
    pub fingerprint: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// reference, consensus, sectioning or hybrid; `hybrid:4x3` style specs
    /// are accepted too.
    #[arg(long, default_value = "reference")]
    pub method: String,
    /// Row divisions (replicas) for consensus and hybrid.
    #[arg(long)]
    pub m: Option<usize>,
    /// Column divisions (segments) for sectioning and hybrid.
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub run: RunArgs,
    /// How ledger.csv counts broadcasts.
    #[arg(long, value_enum, default_value = "sender-once")]
    pub convention: LedgerConvention,
    /// Output directory for solution.cmat, trace.csv, ledger.csv, metrics.json.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct CompareArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Comma-separated method specs, e.g. `consensus:3,sectioning:4,hybrid:3x4`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub methods: Vec<String>,
    #[command(flatten)]
    pub run: RunArgs,
    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Combines `--method` with `--m`/`--n` into a spec.
pub fn method_spec(method: &str, m: Option<usize>, n: Option<usize>) -> CliResult<MethodSpec> {
    if method.contains(':') {
        if m.is_some() || n.is_some() {
            return Err(CliError::Usage(format!(
                "'{method}' already fixes the divisions; drop --m/--n"
            )));
        }
        return Ok(method.parse()?);
    }
    let unused = |flag: &str, v: Option<usize>| match v {
        None | Some(1) => Ok(()),
        Some(x) => Err(CliError::Usage(format!(
            "--{flag} {x} does not apply to {method}"
        ))),
    };
    let need = |flag: &str, v: Option<usize>| {
        v.ok_or_else(|| CliError::Usage(format!("{method} needs --{flag}")))
    };
    match method {
        "reference" => {
            unused("m", m)?;
            unused("n", n)?;
            Ok(MethodSpec::Reference)
        }
        "consensus" => {
            unused("n", n)?;
            Ok(MethodSpec::Consensus { m: need("m", m)? })
        }
        "sectioning" => {
            unused("m", m)?;
            Ok(MethodSpec::Sectioning { n: need("n", n)? })
        }
        "hybrid" => Ok(MethodSpec::Hybrid {
            m: need("m", m)?,
            n: need("n", n)?,
        }),
        other => Err(CliError::Usage(format!(
            "unknown method '{other}' (expected reference, consensus, sectioning or hybrid)"
        ))),
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {t} threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn warn_if_ragged(p: &SensingProblem, spec: &MethodSpec, ragged: bool) -> CliResult<()> {
    let (m, n) = spec.divisions();
    let part = make_partition(p.n_m(), p.n_p(), m, n, ragged)?;
    if part.is_ragged() {
        eprintln!(
            "warning: {spec} on {}x{} has unequal blocks; per-node counts will not match the uniform formula",
            p.n_m(),
            p.n_p()
        );
    }
    Ok(())
}

fn run_one(
    p: &SensingProblem,
    cfg: &SolverConfig,
    spec: &MethodSpec,
    run: &RunArgs,
) -> CliResult<SolveReport> {
    warn_if_ragged(p, spec, run.ragged)?;
    Ok(with_threads(run.threads, || {
        solve(p, cfg, spec, run.ragged)
    })??)
}

pub fn run_solve(args: &SolveArgs) -> CliResult<String> {
    let spec = method_spec(&args.method, args.m, args.n)?;
    let problem = args.problem.load()?;
    let cfg = args.solver.config(&problem)?;
    let report = run_one(&problem, &cfg, &spec, &args.run)?;
    let files = report_files(&report, args.convention.into());
    write_files(&args.out, &files)?;

    let mut out = format!(
        "{spec}: {} iterations, objective {:.6e}, primal {:.3e}, dual {:.3e}\n",
        report.iterations_run,
        report.objective,
        report.trace.last().map_or(0.0, |t| t.primal_norm),
        report.trace.last().map_or(0.0, |t| t.dual_norm),
    );
    if let Some(m) = report.metrics {
        out += &format!(
            "nmse {:.4e}, support precision {:.3}, recall {:.3}\n",
            m.nmse, m.support_precision, m.support_recall
        );
    }
    out += &format!("wrote {}\n", args.out.display());
    if args.run.fingerprint {
        out += &format!("fingerprint {}\n", fingerprint(&files));
    }
    Ok(out)
}

#[derive(Serialize, Debug)]
struct Entry {
    method: String,
    objective: f64,
    nmse: Option<f64>,
    support_precision: Option<f64>,
    support_recall: Option<f64>,
    primal_norm: f64,
    dual_norm: f64,
    iterations_run: usize,
    /// Largest per-iteration total over the worker nodes (sender-once).
    elements_per_node_per_iteration: u64,
    /// Everything every node moved over the whole run (sender-once).
    total_elements: u64,
    wall_clock_seconds: f64,
}

fn entry(r: &SolveReport) -> Entry {
    let conv = Convention::SenderOnceBroadcast;
    let l = &r.ledger;
    let per_node = (0..l.nodes().len())
        .filter(|&i| l.nodes()[i].is_worker())
        .flat_map(|i| (1..=l.iterations()).map(move |k| l.traffic(i, k).total(conv)))
        .max()
        .unwrap_or(0);
    let total = (0..l.nodes().len()).map(|i| l.node_total(i, conv)).sum();
    let last = r.trace.last();
    Entry {
        method: r.method.to_string(),
        objective: r.objective,
        nmse: r.metrics.map(|m| m.nmse),
        support_precision: r.metrics.map(|m| m.support_precision),
        support_recall: r.metrics.map(|m| m.support_recall),
        primal_norm: last.map_or(0.0, |t| t.primal_norm),
        dual_norm: last.map_or(0.0, |t| t.dual_norm),
        iterations_run: r.iterations_run,
        elements_per_node_per_iteration: per_node,
        total_elements: total,
        wall_clock_seconds: (r.timing.setup + r.timing.iterations).as_secs_f64(),
    }
}

/// Methods achieving the smallest value; ties are all listed.
fn winners(entries: &[Entry], key: impl Fn(&Entry) -> Option<f64>) -> Vec<String> {
    let best = entries
        .iter()
        .filter_map(&key)
        .fold(f64::INFINITY, f64::min);
    entries
        .iter()
        .filter(|e| key(e) == Some(best))
        .map(|e| e.method.clone())
        .collect()
}

pub fn run_compare(args: &CompareArgs) -> CliResult<String> {
    let specs = args
        .methods
        .iter()
        .map(|s| s.trim().parse::<MethodSpec>().map_err(CliError::from))
        .collect::<CliResult<Vec<_>>>()?;
    let problem = args.problem.load()?;
    let cfg = args.solver.config(&problem)?;
    let entries = specs
        .iter()
        .map(|s| run_one(&problem, &cfg, s, &args.run).map(|r| entry(&r)))
        .collect::<CliResult<Vec<_>>>()?;

    let winners = json!({
        "objective": winners(&entries, |e| Some(e.objective)),
        "nmse": winners(&entries, |e| e.nmse),
        "primal_residual": winners(&entries, |e| Some(e.primal_norm)),
        "dual_residual": winners(&entries, |e| Some(e.dual_norm)),
        "communication": winners(&entries, |e| Some(e.elements_per_node_per_iteration as f64)),
        "wall_clock": winners(&entries, |e| Some(e.wall_clock_seconds)),
    });
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "problem": { "nm": problem.n_m(), "np": problem.n_p() },
        "config": cfg,
        "entries": entries,
        "winners": winners,
    });
    if args.run.fingerprint {
        doc["fingerprint"] = Value::String(stable_hash(&doc));
    }
    let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    if let Some(path) = &args.out {
        std::fs::write(path, &text).map_err(|e| CliError::io(path, e))?;
    }
    Ok(text)
}

/// Hash of the report with the timing fields removed, so it only changes
/// when the numbers do.
fn stable_hash(doc: &Value) -> String {
    let mut d = doc.clone();
    if let Some(entries) = d["entries"].as_array_mut() {
        for e in entries {
            e["wall_clock_seconds"] = Value::Null;
        }
    }
    d["winners"]["wall_clock"] = Value::Null;
    format!("{:x}", Sha256::digest(d.to_string().as_bytes()))
}
