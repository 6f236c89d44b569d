//! Complex dense linear algebra used by every solver.

mod cholesky;
mod dense;
mod gram;

pub use cholesky::Cholesky;
pub use dense::{adjoint_matvec, matvec, CMatrix, CVector, C64};
pub use gram::{gram_solve, make_gram_solver, GramSolver, GramStrategy};

pub(crate) use dense::{dist_sqr, ZERO};
