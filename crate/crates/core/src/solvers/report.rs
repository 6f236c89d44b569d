use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use crate::admm::{apply_scaling, ResidualRecord, ResidualTrace, SolverConfig};
use crate::comm::{CommLedger, NodeRole};
use crate::error::{Error, Result};
use crate::linalg::{matvec, CVector, GramStrategy};
use crate::problem::{recovery_metrics, RecoveryMetrics, SensingProblem};

/// Which splitting to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum MethodSpec {
    Reference,
    Consensus { m: usize },
    Sectioning { n: usize },
    Hybrid { m: usize, n: usize },
}

impl MethodSpec {
    pub fn name(&self) -> &'static str {
        match self {
            MethodSpec::Reference => "reference",
            MethodSpec::Consensus { .. } => "consensus",
            MethodSpec::Sectioning { .. } => "sectioning",
            MethodSpec::Hybrid { .. } => "hybrid",
        }
    }

    /// `(M, N)` of the grid this method uses.
    pub fn divisions(&self) -> (usize, usize) {
        match *self {
            MethodSpec::Reference => (1, 1),
            MethodSpec::Consensus { m } => (m, 1),
            MethodSpec::Sectioning { n } => (1, n),
            MethodSpec::Hybrid { m, n } => (m, n),
        }
    }
}

impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodSpec::Reference => write!(f, "reference"),
            MethodSpec::Consensus { m } => write!(f, "consensus:{m}"),
            MethodSpec::Sectioning { n } => write!(f, "sectioning:{n}"),
            MethodSpec::Hybrid { m, n } => write!(f, "hybrid:{m}x{n}"),
        }
    }
}

/// Parses `reference`, `consensus:M`, `sectioning:N` and `hybrid:MxN`.
impl FromStr for MethodSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("cannot parse method spec '{s}'"));
        let count = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        match (name.trim(), arg) {
            ("reference", None) => Ok(MethodSpec::Reference),
            ("consensus", Some(a)) => Ok(MethodSpec::Consensus { m: count(a)? }),
            ("sectioning", Some(a)) => Ok(MethodSpec::Sectioning { n: count(a)? }),
            ("hybrid", Some(a)) => {
                let (m, n) = a.split_once('x').ok_or_else(bad)?;
                Ok(MethodSpec::Hybrid {
                    m: count(m)?,
                    n: count(n)?,
                })
            }
            _ => Err(bad()),
        }
    }
}

/// All iterates of one iteration. `replicas` holds one full-length vector
/// per replica (segments concatenated); `v` is the consensus/solution.
#[derive(Clone, Debug, PartialEq)]
pub struct IterateSnapshot {
    pub replicas: Vec<CVector>,
    pub v: CVector,
}

/// Shape of one node's Gram block and how it is inverted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockInfo {
    pub node: NodeRole,
    pub rows: usize,
    pub cols: usize,
    pub strategy: GramStrategy,
    pub inner_dim: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Timing {
    /// Block extraction and factorization.
    pub setup: Duration,
    pub iterations: Duration,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub method: MethodSpec,
    pub solution: CVector,
    pub trace: ResidualTrace,
    pub ledger: CommLedger,
    pub iterations_run: usize,
    /// `0.5 |H v - g|^2 + lambda |v|_1` on the (scaled) problem that was solved.
    pub objective: f64,
    pub metrics: Option<RecoveryMetrics>,
    pub history: Option<Vec<IterateSnapshot>>,
    pub blocks: Vec<BlockInfo>,
    pub timing: Timing,
}

pub fn lasso_objective(problem: &SensingProblem, lambda: f64, v: &CVector) -> Result<f64> {
    let r = matvec(problem.h(), v)?.sub(problem.g())?;
    Ok(0.5 * r.norm_sqr() + lambda * v.norm_l1())
}

/// Validates the config and applies the joint scaling when `scl != 1`.
pub(crate) fn prepare<'a>(
    problem: &'a SensingProblem,
    cfg: &SolverConfig,
) -> Result<Cow<'a, SensingProblem>> {
    cfg.validate()?;
    Ok(if cfg.scl == 1.0 {
        Cow::Borrowed(problem)
    } else {
        Cow::Owned(apply_scaling(problem, cfg.scl)?)
    })
}

/// Records residuals and objective each iteration, catches blow-ups and
/// applies the stopping rule.
pub(crate) struct Monitor<'a> {
    cfg: &'a SolverConfig,
    problem: &'a SensingProblem,
    trace: ResidualTrace,
    history: Option<Vec<IterateSnapshot>>,
}

impl<'a> Monitor<'a> {
    pub fn new(cfg: &'a SolverConfig, problem: &'a SensingProblem) -> Self {
        Self {
            cfg,
            problem,
            trace: ResidualTrace::default(),
            history: cfg.record_iterates.then(Vec::new),
        }
    }

    /// Returns `Ok(true)` when the run should stop early.
    pub fn observe(
        &mut self,
        iteration: usize,
        primal_sqr: f64,
        dual_sqr: f64,
        v: &CVector,
        replicas: impl FnOnce() -> Vec<CVector>,
    ) -> Result<bool> {
        let primal = primal_sqr.sqrt();
        let dual = dual_sqr.sqrt();
        let blown = |what: &str| Error::Numerical {
            message: format!("{what} became non-finite at iteration {iteration}"),
            last_good_iteration: Some(iteration - 1),
        };
        if !primal.is_finite() || !dual.is_finite() {
            return Err(blown("residual"));
        }
        if !v.is_finite() {
            return Err(blown("consensus iterate"));
        }
        let objective = lasso_objective(self.problem, self.cfg.lambda, v)?;
        if !objective.is_finite() {
            return Err(blown("objective"));
        }
        self.trace.push(ResidualRecord {
            iteration,
            primal_norm: primal,
            dual_norm: dual,
            objective,
        });
        if let Some(h) = self.history.as_mut() {
            h.push(IterateSnapshot {
                replicas: replicas(),
                v: v.clone(),
            });
        }
        Ok(self.cfg.converged(primal, dual))
    }

    pub fn finish(
        self,
        method: MethodSpec,
        solution: CVector,
        ledger: CommLedger,
        blocks: Vec<BlockInfo>,
        timing: Timing,
    ) -> Result<SolveReport> {
        let objective = match self.trace.last() {
            Some(r) => r.objective,
            None => lasso_objective(self.problem, self.cfg.lambda, &solution)?,
        };
        let metrics = self
            .problem
            .truth()
            .map(|t| recovery_metrics(&solution, t))
            .transpose()?;
        Ok(SolveReport {
            method,
            iterations_run: self.trace.len(),
            solution,
            trace: self.trace,
            ledger,
            objective,
            metrics,
            history: self.history,
            blocks,
            timing,
        })
    }
}
