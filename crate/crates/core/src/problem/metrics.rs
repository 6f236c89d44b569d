use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dist_sqr, CVector};

/// Entries above this fraction of the estimate's largest modulus count as
/// recovered support.
pub const SUPPORT_THRESHOLD: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RecoveryMetrics {
    pub nmse: f64,
    pub support_precision: f64,
    pub support_recall: f64,
}

/// NMSE is `|est - truth|^2 / |truth|^2`. Precision is 0 when the estimate
/// claims no support at all.
pub fn recovery_metrics(estimate: &CVector, truth: &CVector) -> Result<RecoveryMetrics> {
    if estimate.len() != truth.len() {
        return Err(Error::Dimension(format!(
            "estimate has {} entries, truth has {}",
            estimate.len(),
            truth.len()
        )));
    }
    let truth_energy = truth.norm_sqr();
    if truth_energy == 0.0 {
        return Err(Error::Metrics("ground truth is all zeros".into()));
    }
    let nmse = dist_sqr(estimate.as_slice(), truth.as_slice()) / truth_energy;

    let cut = SUPPORT_THRESHOLD * estimate.norm_inf();
    let (mut claimed, mut hits, mut actual) = (0usize, 0usize, 0usize);
    for (e, t) in estimate.iter().zip(truth.iter()) {
        let in_est = e.norm() > cut;
        let in_truth = t.norm() > 0.0;
        claimed += in_est as usize;
        actual += in_truth as usize;
        hits += (in_est && in_truth) as usize;
    }
    let support_precision = if claimed == 0 {
        0.0
    } else {
        hits as f64 / claimed as f64
    };
    Ok(RecoveryMetrics {
        nmse,
        support_precision,
        support_recall: hits as f64 / actual as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;

    fn truth() -> CVector {
        CVector::new(vec![
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, -2.0),
            C64::new(0.0, 0.0),
        ])
        .unwrap()
    }

    #[test]
    fn exact_estimate() {
        let m = recovery_metrics(&truth(), &truth()).unwrap();
        assert_eq!(
            m,
            RecoveryMetrics {
                nmse: 0.0,
                support_precision: 1.0,
                support_recall: 1.0
            }
        );
    }

    #[test]
    fn zero_estimate() {
        let m = recovery_metrics(&CVector::zeros(4), &truth()).unwrap();
        assert_eq!(m.nmse, 1.0);
        assert_eq!(m.support_recall, 0.0);
    }

    #[test]
    fn known_perturbation() {
        // |truth| = sqrt(5); perturb entry 1 by 0.1 * sqrt(5)
        let mut est = truth();
        est[1] = C64::new(0.1 * 5f64.sqrt(), 0.0);
        let m = recovery_metrics(&est, &truth()).unwrap();
        assert!((m.nmse - 0.01).abs() < 1e-15);
        assert!((m.support_precision - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(m.support_recall, 1.0);
    }

    #[test]
    fn zero_truth_rejected() {
        assert!(matches!(
            recovery_metrics(&truth(), &CVector::zeros(4)),
            Err(Error::Metrics(_))
        ));
    }
}
