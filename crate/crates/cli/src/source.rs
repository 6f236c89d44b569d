//! Where a problem comes from: a directory written by `gen`, or generation
//! flags on the command line.

use std::fs;
use std::path::{Path, PathBuf};

use admm_split::problem::{read_cmat, read_cvec, write_cmat, write_cvec};
use admm_split::{gen_problem, MatrixKind, SensingProblem};
use clap::Args;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::SCHEMA_VERSION;

pub const H_FILE: &str = "H.cmat";
pub const G_FILE: &str = "g.cmat";
pub const TRUTH_FILE: &str = "truth.cmat";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    /// Number of measurements (rows of H).
    #[arg(long)]
    pub nm: Option<usize>,
    /// Number of unknowns (columns of H).
    #[arg(long)]
    pub np: Option<usize>,
    /// Nonzeros in the ground truth.
    #[arg(long)]
    pub k: Option<usize>,
    /// Signal-to-noise ratio in dB; `inf` for noiseless data.
    #[arg(long, default_value_t = f64::INFINITY)]
    pub snr: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// complex-gaussian or random-phase.
    #[arg(long, default_value = "random-phase")]
    pub kind: MatrixKind,
}

impl GenArgs {
    fn any_set(&self) -> bool {
        self.k.is_some() || self.seed.is_some()
    }

    pub fn generate(&self) -> CliResult<SensingProblem> {
        let need = |v: Option<usize>, flag: &str| {
            v.ok_or_else(|| CliError::Usage(format!("--{flag} is required to generate a problem")))
        };
        let seed = self
            .seed
            .ok_or_else(|| CliError::Usage("--seed is required to generate a problem".into()))?;
        Ok(gen_problem(
            need(self.nm, "nm")?,
            need(self.np, "np")?,
            need(self.k, "k")?,
            self.snr,
            seed,
            self.kind,
        )?)
    }
}

/// Recorded next to the CMAT files so a problem directory describes itself.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Manifest {
    pub schema_version: u32,
    pub nm: usize,
    pub np: usize,
    pub k: usize,
    /// `None` for noiseless data.
    pub snr_db: Option<f64>,
    pub seed: u64,
    pub kind: String,
    pub noise_sigma: f64,
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    /// Directory holding H.cmat and g.cmat (truth.cmat optional).
    #[arg(long, value_name = "DIR")]
    pub problem: Option<PathBuf>,
    #[command(flatten)]
    pub gen: GenArgs,
}

impl ProblemArgs {
    /// Exactly one source: a directory, or generation flags. `--nm`/`--np`
    /// next to a directory are checked against the files.
    pub fn load(&self) -> CliResult<SensingProblem> {
        match &self.problem {
            Some(dir) => {
                if self.gen.any_set() {
                    return Err(CliError::Usage(
                        "give either --problem or generation flags (--k, --seed), not both".into(),
                    ));
                }
                let p = read_problem(dir)?;
                for (flag, want, got) in
                    [("nm", self.gen.nm, p.n_m()), ("np", self.gen.np, p.n_p())]
                {
                    if let Some(w) = want {
                        if w != got {
                            return Err(CliError::Usage(format!(
                                "--{flag} {w} does not match the problem files ({got})"
                            )));
                        }
                    }
                }
                Ok(p)
            }
            None => self.gen.generate(),
        }
    }
}

pub fn read_problem(dir: &Path) -> CliResult<SensingProblem> {
    let h = read_cmat(dir.join(H_FILE))?;
    let g = read_cvec(dir.join(G_FILE))?;
    let p = SensingProblem::new(h, g)?;
    let truth = dir.join(TRUTH_FILE);
    Ok(if truth.exists() {
        p.with_truth(read_cvec(truth)?)?
    } else {
        p
    })
}

pub fn write_problem(dir: &Path, p: &SensingProblem, args: &GenArgs) -> CliResult<Manifest> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    write_cmat(dir.join(H_FILE), p.h())?;
    write_cvec(dir.join(G_FILE), p.g())?;
    if let Some(t) = p.truth() {
        write_cvec(dir.join(TRUTH_FILE), t)?;
    }
    let manifest = Manifest {
        schema_version: SCHEMA_VERSION,
        nm: p.n_m(),
        np: p.n_p(),
        k: args.k.unwrap_or(0),
        snr_db: args.snr.is_finite().then_some(args.snr),
        seed: args.seed.unwrap_or(0),
        kind: p.kind().name().to_string(),
        noise_sigma: p.noise_sigma(),
    };
    let path = dir.join(MANIFEST_FILE);
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, text + "\n").map_err(|e| CliError::io(&path, e))?;
    Ok(manifest)
}
