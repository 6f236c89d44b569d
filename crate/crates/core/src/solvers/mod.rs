//! The distributed solvers, run on the simulated node runtime.
//!
//! Every entry point validates the config, applies `cfg.scl`, extracts the
//! blocks, and returns a [`SolveReport`] with the residual trace and the
//! communication ledger.

mod grid;
mod report;

pub use report::{lasso_objective, BlockInfo, IterateSnapshot, MethodSpec, SolveReport, Timing};

pub(crate) use report::{prepare, Monitor};

use crate::admm::{lasso_admm_reference, SolverConfig};
use crate::error::Result;
use crate::partition::{make_partition, PartitionSpec};
use crate::problem::SensingProblem;

use grid::Layout;

/// Row split into `m` replicas, each holding `N_m / m` measurements, with a
/// central node enforcing `u^i = v`. Requires `m | N_m`.
pub fn consensus_solve(
    problem: &SensingProblem,
    cfg: &SolverConfig,
    m: usize,
) -> Result<SolveReport> {
    let spec = make_partition(problem.n_m(), problem.n_p(), m, 1, false)?;
    consensus_partitioned(problem, cfg, &spec)
}

/// Column split into `n` image segments exchanging estimated data
/// `H_j u_j`. Requires `n | N_p`.
pub fn sectioning_solve(
    problem: &SensingProblem,
    cfg: &SolverConfig,
    n: usize,
) -> Result<SolveReport> {
    let spec = make_partition(problem.n_m(), problem.n_p(), 1, n, false)?;
    sectioning_partitioned(problem, cfg, &spec)
}

/// `m x n` grid: `m` replicas of each of `n` segments. Requires `m | N_m`
/// and `n | N_p`.
pub fn hybrid_solve(
    problem: &SensingProblem,
    cfg: &SolverConfig,
    m: usize,
    n: usize,
) -> Result<SolveReport> {
    let spec = make_partition(problem.n_m(), problem.n_p(), m, n, false)?;
    hybrid_partitioned(problem, cfg, &spec)
}

/// Consensus on an explicit (possibly ragged) partition with one column
/// block.
pub fn consensus_partitioned(
    problem: &SensingProblem,
    cfg: &SolverConfig,
    spec: &PartitionSpec,
) -> Result<SolveReport> {
    grid::run(problem, cfg, spec, Layout::Consensus)
}

/// Sectioning on an explicit (possibly ragged) partition with one row block.
pub fn sectioning_partitioned(
    problem: &SensingProblem,
    cfg: &SolverConfig,
    spec: &PartitionSpec,
) -> Result<SolveReport> {
    grid::run(problem, cfg, spec, Layout::Sectioning)
}

pub fn hybrid_partitioned(
    problem: &SensingProblem,
    cfg: &SolverConfig,
    spec: &PartitionSpec,
) -> Result<SolveReport> {
    grid::run(problem, cfg, spec, Layout::Hybrid)
}

/// Runs `method`; `ragged` lets the leading blocks absorb a remainder.
pub fn solve(
    problem: &SensingProblem,
    cfg: &SolverConfig,
    method: &MethodSpec,
    ragged: bool,
) -> Result<SolveReport> {
    let (m, n) = method.divisions();
    let part = || make_partition(problem.n_m(), problem.n_p(), m, n, ragged);
    match method {
        MethodSpec::Reference => lasso_admm_reference(problem, cfg),
        MethodSpec::Consensus { .. } => consensus_partitioned(problem, cfg, &part()?),
        MethodSpec::Sectioning { .. } => sectioning_partitioned(problem, cfg, &part()?),
        MethodSpec::Hybrid { .. } => hybrid_partitioned(problem, cfg, &part()?),
    }
}
