use std::time::Instant;

use super::{soft_threshold_sum, SolverConfig};
use crate::comm::{CommLedger, NodeRole};
use crate::error::Result;
use crate::linalg::{adjoint_matvec, dist_sqr, CVector, GramSolver};
use crate::problem::SensingProblem;
use crate::solvers::{prepare, BlockInfo, MethodSpec, Monitor, SolveReport, Timing};

/// Single-node scaled-dual ADMM for
/// `min 0.5 |H u - g|^2 + lambda |v|_1  s.t.  u = v`:
///
/// ```text
/// u <- (H^* H + rho I)^{-1} (H^* g + rho (v - s))
/// v <- S_{lambda/rho}(u + s)
/// s <- s + u - v
/// ```
///
/// starting from zero. Returns `v`.
pub fn lasso_admm_reference(problem: &SensingProblem, cfg: &SolverConfig) -> Result<SolveReport> {
    let problem = prepare(problem, cfg)?;
    let problem = problem.as_ref();
    let started = Instant::now();

    let rho = cfg.rho;
    let kappa = cfg.lambda / rho;
    let gram = GramSolver::new(problem.h().clone(), rho)?;
    let hg = adjoint_matvec(problem.h(), problem.g())?;
    let blocks = vec![BlockInfo {
        node: NodeRole::Single,
        rows: problem.n_m(),
        cols: problem.n_p(),
        strategy: gram.strategy(),
        inner_dim: gram.inner_dim(),
    }];

    let n_p = problem.n_p();
    let mut v = CVector::zeros(n_p);
    let mut s = CVector::zeros(n_p);
    let mut monitor = Monitor::new(cfg, problem);
    let mut ledger = CommLedger::new(vec![NodeRole::Single]);
    let setup = started.elapsed();
    let started = Instant::now();

    for k in 1..=cfg.max_iters {
        ledger.open_iteration();
        let rhs = CVector::from_vec_unchecked(
            hg.iter()
                .zip(v.iter().zip(s.iter()))
                .map(|(b, (vl, sl))| b + (vl - sl) * rho)
                .collect(),
        );
        let u = gram.solve(&rhs)?;
        let v_prev = std::mem::replace(
            &mut v,
            soft_threshold_sum(u.as_slice(), s.as_slice(), kappa),
        );
        for ((sl, ul), vl) in s.as_mut_slice().iter_mut().zip(u.iter()).zip(v.iter()) {
            *sl = *sl + ul - vl;
        }
        let primal_sqr = dist_sqr(u.as_slice(), v.as_slice());
        let dual_sqr = rho * rho * dist_sqr(v.as_slice(), v_prev.as_slice());
        if monitor.observe(k, primal_sqr, dual_sqr, &v, || vec![u.clone()])? {
            break;
        }
    }

    let timing = Timing {
        setup,
        iterations: started.elapsed(),
    };
    monitor.finish(MethodSpec::Reference, v, ledger, blocks, timing)
}
