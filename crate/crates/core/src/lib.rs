//! Distributed ADMM for sparse recovery from complex linear measurements
//! `g = H u + w`:
//!
//! ```text
//! min_u  0.5 |H u - g|^2 + lambda |u|_1
//! ```
//!
//! The sensing matrix can be split by rows (consensus over replicas of `u`),
//! by columns (sectioning the image into segments that exchange estimated
//! data) or both (hybrid). Each split runs on a simulated cluster whose
//! message layer counts every complex element moved, so the measured
//! traffic can be checked against the closed-form per-node counts in
//! [`comm`].
//!
//! ```
//! use admm_split::{gen_problem, hybrid_solve, MatrixKind, SolverConfig};
//!
//! let problem = gen_problem(24, 60, 3, 30.0, 1, MatrixKind::ComplexGaussian).unwrap();
//! let cfg = SolverConfig { rho: 1.0, lambda: 0.02, max_iters: 100, ..Default::default() };
//! let report = hybrid_solve(&problem, &cfg, 2, 3).unwrap();
//! assert_eq!(report.solution.len(), 60);
//! assert_eq!(report.iterations_run, 100);
//! ```

pub mod admm;
pub mod comm;
pub mod error;
pub mod linalg;
pub mod net;
pub mod partition;
pub mod problem;
pub mod solvers;

pub use admm::{apply_scaling, lasso_admm_reference, soft_threshold, SolverConfig};
pub use comm::{per_node_elements, CommLedger, Convention, NodeRole, Scheme};
pub use error::{Error, Result};
pub use linalg::{gram_solve, make_gram_solver, CMatrix, CVector, GramSolver, GramStrategy, C64};
pub use partition::{make_partition, PartitionSpec};
pub use problem::{gen_problem, recovery_metrics, MatrixKind, RecoveryMetrics, SensingProblem};
pub use solvers::{
    consensus_solve, hybrid_solve, sectioning_solve, solve, MethodSpec, SolveReport,
};
