//! Seeded synthetic instances.
//!
//! Randomness comes from ChaCha20 (`rand_chacha::ChaCha20Rng::seed_from_u64`)
//! and is consumed in a fixed order so other implementations can reproduce
//! the bytes:
//!
//! 1. `H`, row-major. Gaussian entries use one Box-Muller pair each;
//!    random-phase entries use one uniform draw each.
//! 2. Support: partial Fisher-Yates over `0..n_p`, one uniform per position.
//! 3. One uniform phase per support entry, in the order the positions were drawn.
//! 4. Noise (only when the SNR is finite): one Box-Muller pair per measurement.
//!
//! A uniform is `(next_u64() >> 11) * 2^-53`. Box-Muller maps uniforms
//! `(a, b)` to `sqrt(-2 ln(1 - a)) * (cos 2 pi b, sin 2 pi b)`.

use std::f64::consts::TAU;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use super::SensingProblem;
use crate::error::{Error, Result};
use crate::linalg::{matvec, CMatrix, CVector, C64, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    /// i.i.d. `(x + iy) / sqrt(2 n_m)` with standard normal `x, y`.
    ComplexGaussian,
    /// i.i.d. `exp(i theta) / sqrt(n_m)`, theta uniform; a stand-in for the
    /// pseudo-random phase codes of a compressive reflector antenna.
    RandomPhase,
    FromFile,
}

impl MatrixKind {
    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::ComplexGaussian => "complex-gaussian",
            MatrixKind::RandomPhase => "random-phase",
            MatrixKind::FromFile => "from-file",
        }
    }
}

impl std::str::FromStr for MatrixKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex-gaussian" | "gaussian" => Ok(MatrixKind::ComplexGaussian),
            "random-phase" => Ok(MatrixKind::RandomPhase),
            other => Err(Error::Parameter(format!(
                "unknown matrix kind '{other}' (expected complex-gaussian or random-phase)"
            ))),
        }
    }
}

struct Stream(ChaCha20Rng);

impl Stream {
    fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn gaussian_pair(&mut self) -> C64 {
        let a = self.uniform();
        let b = self.uniform();
        let r = (-2.0 * (1.0 - a).ln()).sqrt();
        let t = TAU * b;
        C64::new(r * t.cos(), r * t.sin())
    }

    fn phase(&mut self) -> C64 {
        C64::from_polar(1.0, TAU * self.uniform())
    }
}

/// Draws `H`, a `sparsity_k`-sparse unit-modulus truth and noise at the
/// requested SNR (dB). `snr_db = +inf` means noiseless.
pub fn gen_problem(
    n_m: usize,
    n_p: usize,
    sparsity_k: usize,
    snr_db: f64,
    seed: u64,
    kind: MatrixKind,
) -> Result<SensingProblem> {
    if n_m == 0 || n_p == 0 {
        return Err(Error::Parameter(format!(
            "dimensions must be positive, got {n_m}x{n_p}"
        )));
    }
    if sparsity_k == 0 || sparsity_k > n_p {
        return Err(Error::Parameter(format!(
            "sparsity must be in 1..={n_p}, got {sparsity_k}"
        )));
    }
    if snr_db.is_nan() || snr_db == f64::NEG_INFINITY {
        return Err(Error::Parameter(format!("invalid SNR {snr_db} dB")));
    }
    let mut rng = Stream(ChaCha20Rng::seed_from_u64(seed));

    let mut data = Vec::with_capacity(n_m * n_p);
    match kind {
        MatrixKind::ComplexGaussian => {
            let s = 1.0 / (2.0 * n_m as f64).sqrt();
            data.extend((0..n_m * n_p).map(|_| rng.gaussian_pair() * s));
        }
        MatrixKind::RandomPhase => {
            let s = 1.0 / (n_m as f64).sqrt();
            data.extend((0..n_m * n_p).map(|_| rng.phase() * s));
        }
        MatrixKind::FromFile => {
            return Err(Error::Parameter(
                "cannot generate a from-file matrix".into(),
            ))
        }
    }
    let h = CMatrix::from_vec_unchecked(n_m, n_p, data);

    let mut order: Vec<usize> = (0..n_p).collect();
    for t in 0..sparsity_k {
        let span = n_p - t;
        let pick = t + ((rng.uniform() * span as f64) as usize).min(span - 1);
        order.swap(t, pick);
    }
    let mut truth = vec![ZERO; n_p];
    for &pos in &order[..sparsity_k] {
        truth[pos] = rng.phase();
    }
    let truth = CVector::from_vec_unchecked(truth);

    let clean = matvec(&h, &truth)?;
    let (g, sigma) = if snr_db.is_infinite() {
        (clean, 0.0)
    } else {
        let raw: Vec<C64> = (0..n_m).map(|_| rng.gaussian_pair()).collect();
        let raw_energy = raw.iter().fold(0.0, |a, z| a + z.norm_sqr());
        let target_energy = clean.norm_sqr() / 10f64.powf(snr_db / 10.0);
        let factor = if raw_energy > 0.0 {
            (target_energy / raw_energy).sqrt()
        } else {
            0.0
        };
        let g = clean
            .iter()
            .zip(&raw)
            .map(|(c, w)| c + w * factor)
            .collect();
        (
            CVector::from_vec_unchecked(g),
            (target_energy / n_m as f64).sqrt(),
        )
    };

    Ok(SensingProblem::new(h, g)?
        .with_truth(truth)?
        .with_origin(kind, sigma))
}
