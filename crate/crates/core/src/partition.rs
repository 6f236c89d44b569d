//! Row, column and grid partitions of `H`.
//!
//! Blocks are materialized copies so each simulated node owns only its slice
//! of the sensing matrix.

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};
use crate::problem::SensingProblem;

/// `m` row divisions over `n_m` measurements, `n` column divisions over
/// `n_p` pixels. Bounds are ascending and start at 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionSpec {
    m: usize,
    n: usize,
    row_bounds: Vec<usize>,
    col_bounds: Vec<usize>,
    ragged: bool,
}

impl PartitionSpec {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_m(&self) -> usize {
        self.row_bounds[self.m]
    }

    pub fn n_p(&self) -> usize {
        self.col_bounds[self.n]
    }

    pub fn row_bounds(&self) -> &[usize] {
        &self.row_bounds
    }

    pub fn col_bounds(&self) -> &[usize] {
        &self.col_bounds
    }

    pub fn is_ragged(&self) -> bool {
        self.ragged
    }

    /// True when every row block and every column block has the same size.
    pub fn is_uniform(&self) -> bool {
        self.n_m() % self.m == 0 && self.n_p() % self.n == 0
    }

    pub fn rows_of(&self, i: usize) -> Range<usize> {
        self.row_bounds[i]..self.row_bounds[i + 1]
    }

    pub fn cols_of(&self, j: usize) -> Range<usize> {
        self.col_bounds[j]..self.col_bounds[j + 1]
    }

    pub(crate) fn check_problem(&self, problem: &SensingProblem) -> Result<()> {
        if problem.n_m() != self.n_m() || problem.n_p() != self.n_p() {
            return Err(Error::Dimension(format!(
                "partition is for {}x{} but the problem is {}x{}",
                self.n_m(),
                self.n_p(),
                problem.n_m(),
                problem.n_p()
            )));
        }
        Ok(())
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i >= self.m {
            return Err(Error::Index(format!("row block {i} of {}", self.m)));
        }
        Ok(())
    }

    fn check_col(&self, j: usize) -> Result<()> {
        if j >= self.n {
            return Err(Error::Index(format!("column block {j} of {}", self.n)));
        }
        Ok(())
    }
}

/// Uniform splits need exact divisibility unless `ragged` is set, in which
/// case the leading blocks take one extra row/column each.
pub fn make_partition(
    n_m: usize,
    n_p: usize,
    m: usize,
    n: usize,
    ragged: bool,
) -> Result<PartitionSpec> {
    if m == 0 || m > n_m {
        return Err(Error::Partition(format!(
            "row divisions must be in 1..={n_m}, got {m}"
        )));
    }
    if n == 0 || n > n_p {
        return Err(Error::Partition(format!(
            "column divisions must be in 1..={n_p}, got {n}"
        )));
    }
    if !ragged {
        if n_m % m != 0 {
            return Err(Error::Partition(format!(
                "{n_m} measurements do not split evenly into {m} row blocks"
            )));
        }
        if n_p % n != 0 {
            return Err(Error::Partition(format!(
                "{n_p} pixels do not split evenly into {n} column blocks"
            )));
        }
    }
    Ok(PartitionSpec {
        m,
        n,
        row_bounds: bounds(n_m, m),
        col_bounds: bounds(n_p, n),
        ragged,
    })
}

fn bounds(total: usize, parts: usize) -> Vec<usize> {
    let base = total / parts;
    let extra = total % parts;
    let mut out = Vec::with_capacity(parts + 1);
    let mut at = 0;
    out.push(0);
    for p in 0..parts {
        at += base + usize::from(p < extra);
        out.push(at);
    }
    out
}

/// `(H_i, g_i)`: row block `i` and its measurements.
pub fn row_block(
    problem: &SensingProblem,
    spec: &PartitionSpec,
    i: usize,
) -> Result<(CMatrix, CVector)> {
    spec.check_problem(problem)?;
    spec.check_row(i)?;
    let rows = spec.rows_of(i);
    let h = problem.h().submatrix(rows.clone(), 0..spec.n_p())?;
    let g = problem.g().segment(rows)?;
    Ok((h, g))
}

/// `H_j`: column block `j` over all measurements.
pub fn col_block(problem: &SensingProblem, spec: &PartitionSpec, j: usize) -> Result<CMatrix> {
    spec.check_problem(problem)?;
    spec.check_col(j)?;
    problem.h().submatrix(0..spec.n_m(), spec.cols_of(j))
}

/// `H_ij`.
pub fn grid_block(
    problem: &SensingProblem,
    spec: &PartitionSpec,
    i: usize,
    j: usize,
) -> Result<CMatrix> {
    spec.check_problem(problem)?;
    spec.check_row(i)?;
    spec.check_col(j)?;
    problem.h().submatrix(spec.rows_of(i), spec.cols_of(j))
}
