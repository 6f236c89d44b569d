//! Pieces shared by every ADMM variant: configuration, the l1 proximal
//! operator, residual traces and the undistributed reference solver.

mod config;
mod prox;
mod reference;
mod trace;

pub use config::SolverConfig;
pub use prox::{soft_threshold, soft_threshold_vec};
pub use reference::lasso_admm_reference;
pub use trace::{ResidualRecord, ResidualTrace};

pub(crate) use prox::soft_threshold_sum;

use crate::error::{Error, Result};
use crate::problem::SensingProblem;

/// Multiplies both `H` and `g` by `scl`.
///
/// Exact solutions of `H u = g` are unchanged. In the lasso objective the
/// data term picks up a factor `scl^2`, so solving the scaled problem with
/// weight `lambda` equals solving the original with `lambda / scl^2`.
pub fn apply_scaling(problem: &SensingProblem, scl: f64) -> Result<SensingProblem> {
    if !(scl.is_finite() && scl > 0.0) {
        return Err(Error::Parameter(format!(
            "scaling factor must be positive, got {scl}"
        )));
    }
    let scaled = SensingProblem::new(problem.h().scale(scl), problem.g().scale(scl))?
        .with_origin(problem.kind(), problem.noise_sigma() * scl);
    match problem.truth() {
        Some(t) => scaled.with_truth(t.clone()),
        None => Ok(scaled),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{CMatrix, CVector};

    #[test]
    fn unit_scaling_is_identity() {
        let p = SensingProblem::new(
            CMatrix::identity(2),
            CVector::from_real(&[1.0, -2.0]).unwrap(),
        )
        .unwrap();
        assert_eq!(apply_scaling(&p, 1.0).unwrap(), p);
    }

    #[test]
    fn scales_h_and_g_jointly() {
        let p = SensingProblem::new(
            CMatrix::new(1, 1, vec![crate::linalg::C64::new(1.0, 0.0)]).unwrap(),
            CVector::from_real(&[3.0]).unwrap(),
        )
        .unwrap();
        let s = apply_scaling(&p, 2.0).unwrap();
        assert_eq!(s.h().get(0, 0).re, 2.0);
        assert_eq!(s.g()[0].re, 6.0);
        assert_eq!(s.g()[0].re / s.h().get(0, 0).re, 3.0);
        assert!(apply_scaling(&p, 0.0).is_err());
    }
}
