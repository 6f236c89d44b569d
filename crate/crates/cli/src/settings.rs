//! Solver flags shared by `solve` and `compare`.

use admm_split::linalg::adjoint_matvec;
use admm_split::{SensingProblem, SolverConfig};
use clap::{Args, ValueEnum};

use crate::error::{CliError, CliResult};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// rho = 1e5, lambda = 1e-2, scl = 1e-4, 50 iterations.
    Paper,
}

#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    /// Augmented Lagrangian penalty [default: 1e5].
    #[arg(long)]
    pub rho: Option<f64>,
    /// Absolute l1 weight [default: 1e-2].
    #[arg(long, conflicts_with = "lambda_rel")]
    pub lambda: Option<f64>,
    /// l1 weight as a fraction of |H* g|_inf on the scaled problem.
    #[arg(long)]
    pub lambda_rel: Option<f64>,
    /// Joint scaling of H and g [default: 1].
    #[arg(long)]
    pub scl: Option<f64>,
    /// Iteration cap [default: 50].
    #[arg(long)]
    pub iters: Option<usize>,
    /// Stop once the primal residual norm is below this (0 disables).
    #[arg(long, default_value_t = 0.0)]
    pub eps_pri: f64,
    /// Stop once the dual residual norm is below this (0 disables).
    #[arg(long, default_value_t = 0.0)]
    pub eps_dual: f64,
    /// Named parameter set; explicit flags still override it.
    #[arg(long)]
    pub preset: Option<Preset>,
}

impl SolverArgs {
    pub fn config(&self, problem: &SensingProblem) -> CliResult<SolverConfig> {
        let base = match self.preset {
            Some(Preset::Paper) => SolverConfig::paper_preset(),
            None => SolverConfig::default(),
        };
        let mut cfg = SolverConfig {
            rho: self.rho.unwrap_or(base.rho),
            lambda: self.lambda.unwrap_or(base.lambda),
            scl: self.scl.unwrap_or(base.scl),
            max_iters: self.iters.unwrap_or(base.max_iters),
            eps_pri: self.eps_pri,
            eps_dual: self.eps_dual,
            ..base
        };
        if let Some(rel) = self.lambda_rel {
            if !(rel.is_finite() && rel > 0.0) {
                return Err(CliError::Usage(format!(
                    "--lambda-rel must be positive, got {rel}"
                )));
            }
            // H and g both carry scl, so H* g carries scl^2.
            let hg = adjoint_matvec(problem.h(), problem.g())?;
            cfg.lambda = rel * hg.norm_inf() * cfg.scl * cfg.scl;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
