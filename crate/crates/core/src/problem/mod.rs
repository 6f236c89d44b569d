//! Sensing problems `g = H u + w`: synthetic generation, file I/O and
//! recovery metrics.

mod cmat;
mod gen;
mod metrics;

pub use cmat::{
    decode_cmat, encode_cmat, read_cmat, read_cvec, write_cmat, write_cvec, CMAT_MAGIC,
};
pub use gen::{gen_problem, MatrixKind};
pub use metrics::{recovery_metrics, RecoveryMetrics, SUPPORT_THRESHOLD};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};

/// Sensing matrix, measurements and (for synthetic data) the ground truth.
#[derive(Clone, Debug, PartialEq)]
pub struct SensingProblem {
    h: CMatrix,
    g: CVector,
    truth: Option<CVector>,
    noise_sigma: f64,
    kind: MatrixKind,
}

impl SensingProblem {
    pub fn new(h: CMatrix, g: CVector) -> Result<Self> {
        if g.len() != h.rows() {
            return Err(Error::Dimension(format!(
                "measurement vector has {} entries but H has {} rows",
                g.len(),
                h.rows()
            )));
        }
        Ok(Self {
            h,
            g,
            truth: None,
            noise_sigma: 0.0,
            kind: MatrixKind::FromFile,
        })
    }

    pub fn with_truth(mut self, truth: CVector) -> Result<Self> {
        if truth.len() != self.h.cols() {
            return Err(Error::Dimension(format!(
                "truth has {} entries but H has {} columns",
                truth.len(),
                self.h.cols()
            )));
        }
        self.truth = Some(truth);
        Ok(self)
    }

    pub(crate) fn with_origin(mut self, kind: MatrixKind, noise_sigma: f64) -> Self {
        self.kind = kind;
        self.noise_sigma = noise_sigma;
        self
    }

    pub fn h(&self) -> &CMatrix {
        &self.h
    }

    pub fn g(&self) -> &CVector {
        &self.g
    }

    pub fn truth(&self) -> Option<&CVector> {
        self.truth.as_ref()
    }

    /// RMS modulus of the injected noise per measurement (0 when noiseless).
    pub fn noise_sigma(&self) -> f64 {
        self.noise_sigma
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    /// Number of measurements (rows of `H`).
    pub fn n_m(&self) -> usize {
        self.h.rows()
    }

    /// Number of pixels (columns of `H`).
    pub fn n_p(&self) -> usize {
        self.h.cols()
    }
}
