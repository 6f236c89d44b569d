//! Cached solves with the regularized Gram operator `H^* H + rho I`.
//!
//! Every ADMM u-update needs `(H^* H + rho I)^{-1} r` for a fixed block `H`
//! and a right-hand side that changes each iteration. The factorization is
//! done once at construction. When the block is wide (`rows < cols`) the
//! matrix inversion lemma
//!
//! ```text
//! (H^* H + rho I)^{-1} = I / rho - H^* (I + H H^* / rho)^{-1} H / rho^2
//! ```
//!
//! turns an `n x n` factorization into an `m x m` one.

use rayon::prelude::*;

use super::cholesky::Cholesky;
use super::dense::{adjoint_matvec, matvec, CMatrix, CVector, C64, ZERO};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum GramStrategy {
    /// Factor `H^* H + rho I` (size `cols x cols`).
    Direct,
    /// Factor `I + H H^* / rho` (size `rows x rows`).
    Woodbury,
}

impl GramStrategy {
    /// Woodbury for strictly wide blocks; square blocks go direct.
    pub fn for_shape(rows: usize, cols: usize) -> Self {
        if rows < cols {
            GramStrategy::Woodbury
        } else {
            GramStrategy::Direct
        }
    }
}

/// Immutable after construction; `solve` takes `&self` and can be shared
/// across threads.
#[derive(Clone, Debug)]
pub struct GramSolver {
    block: CMatrix,
    rho: f64,
    strategy: GramStrategy,
    factor: Cholesky,
}

impl GramSolver {
    pub fn new(block: CMatrix, rho: f64) -> Result<Self> {
        let strategy = GramStrategy::for_shape(block.rows(), block.cols());
        Self::with_strategy(block, rho, strategy)
    }

    pub fn with_strategy(block: CMatrix, rho: f64, strategy: GramStrategy) -> Result<Self> {
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::Parameter(format!("rho must be positive, got {rho}")));
        }
        if !block.is_finite() {
            return Err(Error::numerical("Gram block has non-finite entries"));
        }
        let (n, inner) = match strategy {
            GramStrategy::Woodbury => {
                let n = block.rows();
                let mut k = lower_gram(&block);
                for a in 0..n {
                    for z in &mut k[a * n..a * n + a + 1] {
                        *z /= rho;
                    }
                    k[a * n + a] += 1.0;
                }
                (n, k)
            }
            GramStrategy::Direct => {
                let n = block.cols();
                let mut g = lower_gram(&block.conj_transpose());
                for a in 0..n {
                    g[a * n + a] += rho;
                }
                (n, g)
            }
        };
        let factor = Cholesky::factor(n, inner)?;
        Ok(Self {
            block,
            rho,
            strategy,
            factor,
        })
    }

    pub fn block(&self) -> &CMatrix {
        &self.block
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn strategy(&self) -> GramStrategy {
        self.strategy
    }

    /// Side length of the factored inner matrix.
    pub fn inner_dim(&self) -> usize {
        self.factor.dim()
    }

    /// Returns `x` with `(H^* H + rho I) x = rhs`.
    pub fn solve(&self, rhs: &CVector) -> Result<CVector> {
        if rhs.len() != self.block.cols() {
            return Err(Error::Dimension(format!(
                "gram_solve: rhs of length {} for a block with {} columns",
                rhs.len(),
                self.block.cols()
            )));
        }
        match self.strategy {
            GramStrategy::Direct => {
                let mut x = rhs.clone();
                self.factor.solve_in_place(x.as_mut_slice());
                Ok(x)
            }
            GramStrategy::Woodbury => {
                let mut t = matvec(&self.block, rhs)?;
                self.factor.solve_in_place(t.as_mut_slice());
                let z = adjoint_matvec(&self.block, &t)?;
                let rho = self.rho;
                let rho2 = rho * rho;
                let x = rhs
                    .iter()
                    .zip(z.iter())
                    .map(|(r, z)| r / rho - z / rho2)
                    .collect();
                Ok(CVector::from_vec_unchecked(x))
            }
        }
    }
}

pub fn make_gram_solver(block: CMatrix, rho: f64) -> Result<GramSolver> {
    GramSolver::new(block, rho)
}

pub fn gram_solve(solver: &GramSolver, rhs: &CVector) -> Result<CVector> {
    solver.solve(rhs)
}

/// Lower triangle of `M M^*`, row-major `rows x rows`; upper part left zero.
fn lower_gram(m: &CMatrix) -> Vec<C64> {
    let n = m.rows();
    let mut out = vec![ZERO; n * n];
    out.par_chunks_mut(n).enumerate().for_each(|(a, row)| {
        let ra = m.row(a);
        for (b, slot) in row.iter_mut().enumerate().take(a + 1) {
            *slot = ra
                .iter()
                .zip(m.row(b))
                .fold(ZERO, |acc, (x, y)| acc + x * y.conj());
        }
    });
    out
}
