use serde::Serialize;

use crate::error::{Error, Result};

/// Parameters shared by every solver.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Augmented Lagrangian penalty.
    pub rho: f64,
    /// Weight of the l1 term.
    pub lambda: f64,
    /// Joint scaling applied to `H` and `g` before solving.
    pub scl: f64,
    pub max_iters: usize,
    /// Absolute threshold on the primal residual norm; 0 disables the check.
    pub eps_pri: f64,
    /// Absolute threshold on the dual residual norm; 0 disables the check.
    pub eps_dual: f64,
    pub seed: u64,
    /// Keep every iterate in the report (memory heavy; meant for tests).
    pub record_iterates: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            rho: 1e5,
            lambda: 1e-2,
            scl: 1.0,
            max_iters: 50,
            eps_pri: 0.0,
            eps_dual: 0.0,
            seed: 0,
            record_iterates: false,
        }
    }
}

impl SolverConfig {
    /// rho = 1e5, lambda = 1e-2, scl = 1e-4, 50 iterations: the settings used
    /// for the physical 2160 x 22500 radar system.
    pub fn paper_preset() -> Self {
        Self {
            scl: 1e-4,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, x: f64| {
            if x.is_finite() && x > 0.0 {
                Ok(())
            } else {
                Err(Error::Parameter(format!(
                    "{name} must be positive and finite, got {x}"
                )))
            }
        };
        positive("rho", self.rho)?;
        positive("lambda", self.lambda)?;
        positive("scl", self.scl)?;
        if self.max_iters == 0 {
            return Err(Error::Parameter("max_iters must be at least 1".into()));
        }
        for (name, eps) in [("eps_pri", self.eps_pri), ("eps_dual", self.eps_dual)] {
            if !(eps.is_finite() && eps >= 0.0) {
                return Err(Error::Parameter(format!(
                    "{name} must be non-negative, got {eps}"
                )));
            }
        }
        Ok(())
    }

    /// True when early stopping is enabled and every enabled threshold holds.
    pub(crate) fn converged(&self, primal: f64, dual: f64) -> bool {
        let pri_on = self.eps_pri > 0.0;
        let dual_on = self.eps_dual > 0.0;
        (pri_on || dual_on)
            && (!pri_on || primal <= self.eps_pri)
            && (!dual_on || dual <= self.eps_dual)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SolverConfig::default().validate().is_ok());
        for bad in [
            SolverConfig {
                rho: 0.0,
                ..Default::default()
            },
            SolverConfig {
                lambda: -1.0,
                ..Default::default()
            },
            SolverConfig {
                scl: f64::NAN,
                ..Default::default()
            },
            SolverConfig {
                max_iters: 0,
                ..Default::default()
            },
            SolverConfig {
                eps_pri: -1e-3,
                ..Default::default()
            },
        ] {
            assert!(matches!(bad.validate(), Err(Error::Parameter(_))));
        }
    }

    #[test]
    fn stopping_rule() {
        let off = SolverConfig::default();
        assert!(!off.converged(0.0, 0.0));
        let both = SolverConfig {
            eps_pri: 1e-3,
            eps_dual: 1e-2,
            ..Default::default()
        };
        assert!(both.converged(1e-4, 1e-3));
        assert!(!both.converged(1e-4, 1e-1));
        let primal_only = SolverConfig {
            eps_pri: 1e-3,
            ..Default::default()
        };
        assert!(primal_only.converged(1e-4, 1e9));
    }
}
