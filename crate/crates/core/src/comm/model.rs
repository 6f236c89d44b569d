//! Closed-form per-node exchange counts and the efficiency frontiers that
//! follow from comparing them.
//!
//! With `R = N_p / N_m`:
//!
//! | scheme     | elements per node per iteration |
//! |------------|---------------------------------|
//! | consensus  | `2 N_p`                         |
//! | sectioning | `N N_m`                         |
//! | hybrid     | `N N_m / M + 2 N_p / N`         |
//!
//! The frontier predicates evaluate the closed-form inequalities as usually
//! stated. The count comparison is the authority; the third inequality
//! (`N^2 (M - 1) / (2M) < R`) has its direction reversed relative to the
//! counts and disagrees with them at the 2160 x 22500, M = 4, N = 3 point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::PartitionSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Consensus,
    Sectioning,
    Hybrid,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Consensus, Scheme::Sectioning, Scheme::Hybrid];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Consensus => "consensus",
            Scheme::Sectioning => "sectioning",
            Scheme::Hybrid => "hybrid",
        }
    }
}

/// Elements exchanged by one worker in one iteration.
///
/// Consensus ignores `m` and `n`; sectioning ignores `m` and holds for any
/// column split (every message has length `N_m`); hybrid needs `m | n_m`
/// and `n | n_p`.
pub fn per_node_elements(scheme: Scheme, n_p: u64, n_m: u64, m: u64, n: u64) -> Result<u64> {
    if n_p == 0 || n_m == 0 {
        return Err(Error::Parameter(format!("empty problem {n_m}x{n_p}")));
    }
    if m == 0 || n == 0 {
        return Err(Error::Partition(format!(
            "divisions must be positive, got M={m} N={n}"
        )));
    }
    match scheme {
        Scheme::Consensus => Ok(2 * n_p),
        Scheme::Sectioning => Ok(n * n_m),
        Scheme::Hybrid => {
            if n_m % m != 0 || n_p % n != 0 {
                return Err(Error::Partition(format!(
                    "hybrid counts need M | N_m and N | N_p (N_m={n_m}, M={m}, N_p={n_p}, N={n})"
                )));
            }
            Ok(n * (n_m / m) + 2 * (n_p / n))
        }
    }
}

/// [`per_node_elements`] for the blocks of `spec`. Ragged partitions have no
/// single per-node count and are refused.
pub fn per_node_elements_for(scheme: Scheme, spec: &PartitionSpec) -> Result<u64> {
    if !spec.is_uniform() {
        return Err(Error::Partition(format!(
            "closed-form counts need uniform blocks; {}x{} does not split into {}x{}",
            spec.n_m(),
            spec.n_p(),
            spec.m(),
            spec.n()
        )));
    }
    per_node_elements(
        scheme,
        spec.n_p() as u64,
        spec.n_m() as u64,
        spec.m() as u64,
        spec.n() as u64,
    )
}

/// Percentage of elements saved relative to consensus (negative when the
/// scheme exchanges more).
pub fn reduction_vs_consensus(scheme: Scheme, n_p: u64, n_m: u64, m: u64, n: u64) -> Result<f64> {
    let e = per_node_elements(scheme, n_p, n_m, m, n)? as f64;
    Ok(100.0 * (1.0 - e / (2 * n_p) as f64))
}

/// The reduction in tenths of a percent, rounded half up, computed exactly
/// in integers. `856` means 85.6%.
pub fn reduction_tenths(scheme: Scheme, n_p: u64, n_m: u64, m: u64, n: u64) -> Result<i64> {
    let e = per_node_elements(scheme, n_p, n_m, m, n)? as i128;
    let base = 2 * n_p as i128;
    // round(1000 (base - e) / base) with ties toward +inf
    let num = 2000 * (base - e) + base;
    Ok(num.div_euclid(2 * base) as i64)
}

/// Formats tenths of a percent as `85.6%`.
pub fn format_tenths(tenths: i64) -> String {
    let sign = if tenths < 0 { "-" } else { "" };
    let t = tenths.unsigned_abs();
    format!("{sign}{}.{}%", t / 10, t % 10)
}

/// `R = N_p / N_m`.
pub fn ratio(n_p: u64, n_m: u64) -> f64 {
    n_p as f64 / n_m as f64
}

/// Sectioning beats consensus iff `1 < N < 2R`.
pub fn frontier_sectioning_vs_consensus(r: f64, n: u64) -> bool {
    1 < n && (n as f64) < 2.0 * r
}

/// Hybrid beats consensus iff `N^2 / (2 M (N - 1)) < R` (never for `N = 1`).
pub fn frontier_hybrid_vs_consensus(r: f64, m: u64, n: u64) -> bool {
    if n <= 1 {
        return false;
    }
    let lhs = (n * n) as f64 / (2 * m * (n - 1)) as f64;
    lhs < r
}

/// The hybrid-vs-sectioning bound in its stated form, `N^2 (M - 1) / (2M) < R`.
pub fn frontier_hybrid_vs_sectioning(r: f64, m: u64, n: u64) -> bool {
    if m == 0 {
        return false;
    }
    let lhs = (n * n * (m - 1)) as f64 / (2 * m) as f64;
    lhs < r
}

/// The same comparison derived from the counts: hybrid beats sectioning iff
/// `R < N^2 (M - 1) / (2M)`.
pub fn derived_hybrid_vs_sectioning(r: f64, m: u64, n: u64) -> bool {
    if m == 0 {
        return false;
    }
    let rhs = (n * n * (m - 1)) as f64 / (2 * m) as f64;
    r < rhs
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Verdict {
    /// Strict comparison of the exact per-node counts.
    pub by_count: bool,
    /// The closed-form inequality.
    pub by_inequality: bool,
    /// Left-hand side of the inequality as evaluated.
    pub inequality_lhs: f64,
    /// The bound it is compared against.
    pub inequality_rhs: f64,
}

impl Verdict {
    pub fn agrees(&self) -> bool {
        self.by_count == self.by_inequality
    }
}

/// Pairwise efficiency comparison at one `(N_p, N_m, M, N)` point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EfficiencyReport {
    pub n_p: u64,
    pub n_m: u64,
    pub m: u64,
    pub n: u64,
    pub r: f64,
    pub consensus: u64,
    pub sectioning: u64,
    pub hybrid: u64,
    pub sectioning_vs_consensus: Verdict,
    pub hybrid_vs_consensus: Verdict,
    pub hybrid_vs_sectioning: Verdict,
}

pub fn efficiency_report(n_p: u64, n_m: u64, m: u64, n: u64) -> Result<EfficiencyReport> {
    let consensus = per_node_elements(Scheme::Consensus, n_p, n_m, m, n)?;
    let sectioning = per_node_elements(Scheme::Sectioning, n_p, n_m, m, n)?;
    let hybrid = per_node_elements(Scheme::Hybrid, n_p, n_m, m, n)?;
    let r = ratio(n_p, n_m);
    let (mf, nf) = (m as f64, n as f64);
    Ok(EfficiencyReport {
        n_p,
        n_m,
        m,
        n,
        r,
        consensus,
        sectioning,
        hybrid,
        sectioning_vs_consensus: Verdict {
            by_count: sectioning < consensus,
            by_inequality: frontier_sectioning_vs_consensus(r, n),
            inequality_lhs: nf,
            inequality_rhs: 2.0 * r,
        },
        hybrid_vs_consensus: Verdict {
            by_count: hybrid < consensus,
            by_inequality: frontier_hybrid_vs_consensus(r, m, n),
            inequality_lhs: if n > 1 {
                nf * nf / (2.0 * mf * (nf - 1.0))
            } else {
                f64::INFINITY
            },
            inequality_rhs: r,
        },
        hybrid_vs_sectioning: Verdict {
            by_count: hybrid < sectioning,
            by_inequality: frontier_hybrid_vs_sectioning(r, m, n),
            inequality_lhs: nf * nf * (mf - 1.0) / (2.0 * mf),
            inequality_rhs: r,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const NP: u64 = 22500;
    const NM: u64 = 2160;

    #[test]
    fn benchmark_counts() {
        assert_eq!(
            per_node_elements(Scheme::Consensus, NP, NM, 4, 3).unwrap(),
            45_000
        );
        assert_eq!(
            per_node_elements(Scheme::Sectioning, NP, NM, 1, 3).unwrap(),
            6_480
        );
        // 3 * 540 + 2 * 7500
        assert_eq!(
            per_node_elements(Scheme::Hybrid, NP, NM, 4, 3).unwrap(),
            16_620
        );
    }

    #[test]
    fn benchmark_reductions() {
        assert_eq!(
            reduction_tenths(Scheme::Consensus, NP, NM, 4, 3).unwrap(),
            0
        );
        assert_eq!(
            reduction_tenths(Scheme::Sectioning, NP, NM, 1, 3).unwrap(),
            856
        );
        assert_eq!(reduction_tenths(Scheme::Hybrid, NP, NM, 4, 3).unwrap(), 631);
        let s = reduction_vs_consensus(Scheme::Sectioning, NP, NM, 1, 3).unwrap();
        assert!((s - 85.6).abs() < 0.05);
        assert_eq!(format_tenths(856), "85.6%");
        assert_eq!(format_tenths(-5), "-0.5%");
    }

    #[test]
    fn rounding_is_half_up() {
        // 2 N_p = 2000, sectioning with N_m = 999, N = 1 -> 50.05% -> 50.1%
        assert_eq!(
            reduction_tenths(Scheme::Sectioning, 1000, 999, 1, 1).unwrap(),
            501
        );
        // hybrid exceeding consensus: 2 N_p = 20, hybrid = 10 + 20 = 30 -> -50.0%
        assert_eq!(
            reduction_tenths(Scheme::Hybrid, 10, 10, 1, 1).unwrap(),
            -500
        );
    }

    #[test]
    fn degenerate_hybrid() {
        assert_eq!(
            per_node_elements(Scheme::Hybrid, 10, 7, 1, 1).unwrap(),
            7 + 20
        );
        assert!(!frontier_hybrid_vs_consensus(ratio(10, 7), 1, 1));
    }

    #[test]
    fn hybrid_requires_divisibility() {
        assert!(matches!(
            per_node_elements(Scheme::Hybrid, NP, NM, 7, 3),
            Err(Error::Partition(_))
        ));
        assert!(per_node_elements(Scheme::Sectioning, NP, NM, 1, 7).is_ok());
    }

    #[test]
    fn ragged_specs_are_refused() {
        let ragged = crate::partition::make_partition(10, 9, 4, 3, true).unwrap();
        assert!(per_node_elements_for(Scheme::Consensus, &ragged).is_err());
        let even = crate::partition::make_partition(2160, 22500, 4, 3, false).unwrap();
        assert_eq!(
            per_node_elements_for(Scheme::Sectioning, &even).unwrap(),
            6_480
        );
    }

    #[test]
    fn benchmark_frontiers() {
        let r = ratio(NP, NM);
        assert!(frontier_sectioning_vs_consensus(r, 3));
        // printed bound says hybrid wins; the counts say otherwise
        assert!(frontier_hybrid_vs_sectioning(r, 4, 3));
        assert!(!derived_hybrid_vs_sectioning(r, 4, 3));
        let rep = efficiency_report(NP, NM, 4, 3).unwrap();
        assert!(!rep.hybrid_vs_sectioning.by_count);
        assert!(!rep.hybrid_vs_sectioning.agrees());
        assert!(rep.sectioning_vs_consensus.agrees());
        assert!(rep.hybrid_vs_consensus.agrees());
    }

    #[test]
    fn sectioning_sweep_at_benchmark() {
        let r = ratio(NP, NM);
        for n in 2..=20 {
            assert!(frontier_sectioning_vs_consensus(r, n));
            assert!(per_node_elements(Scheme::Sectioning, NP, NM, 1, n).unwrap() < 2 * NP);
        }
        assert!(!frontier_sectioning_vs_consensus(r, 21));
        assert!(!frontier_sectioning_vs_consensus(r, 1));
    }

    #[test]
    fn hybrid_count_is_unimodal_in_n() {
        for (np, nm, m) in [(22500u64, 2160u64, 4u64), (1000, 100, 1), (5000, 50, 3)] {
            let f = |n: u64| n as f64 * nm as f64 / m as f64 + 2.0 * np as f64 / n as f64;
            let vals: Vec<f64> = (1..200).map(f).collect();
            let argmin = vals
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .unwrap()
                .0;
            assert!(vals[..=argmin].windows(2).all(|w| w[1] <= w[0]));
            assert!(vals[argmin..].windows(2).all(|w| w[1] >= w[0]));
            let n_star = (2.0 * np as f64 * m as f64 / nm as f64).sqrt();
            assert!(((argmin + 1) as f64 - n_star).abs() <= 1.0);
        }
    }
}
