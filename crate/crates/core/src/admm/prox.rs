use crate::linalg::{CVector, C64};

/// Proximal operator of `kappa * |.|` on a complex scalar: shrinks the
/// modulus by `kappa` and keeps the phase. Values with `|a| <= kappa` map
/// to zero. For real `a` this is exactly `a - kappa * sign(a)`.
#[inline]
pub fn soft_threshold(a: C64, kappa: f64) -> C64 {
    debug_assert!(kappa >= 0.0);
    let mag = a.norm();
    if mag > kappa {
        a - (a / mag) * kappa
    } else {
        C64::new(0.0, 0.0)
    }
}

pub fn soft_threshold_vec(a: &CVector, kappa: f64) -> CVector {
    CVector::from_vec_unchecked(a.iter().map(|&z| soft_threshold(z, kappa)).collect())
}

/// `S_kappa(x + y)` elementwise without the intermediate vector.
pub(crate) fn soft_threshold_sum(x: &[C64], y: &[C64], kappa: f64) -> CVector {
    debug_assert_eq!(x.len(), y.len());
    CVector::from_vec_unchecked(
        x.iter()
            .zip(y)
            .map(|(a, b)| soft_threshold(a + b, kappa))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn real_cases() {
        assert_eq!(soft_threshold(re(5.0), 2.0), re(3.0));
        assert_eq!(soft_threshold(re(-5.0), 2.0), re(-3.0));
        assert_eq!(soft_threshold(re(-1.0), 2.0), re(0.0));
        assert_eq!(soft_threshold(re(2.0), 2.0), re(0.0));
    }

    #[test]
    fn complex_shrinks_modulus_keeps_phase() {
        let out = soft_threshold(C64::new(3.0, 4.0), 1.0);
        assert!((out - C64::new(2.4, 3.2)).norm() < 1e-15);
    }

    #[test]
    fn vector_cases() {
        let a = CVector::new(vec![re(5.0), re(-1.0), C64::new(3.0, 4.0)]).unwrap();
        let out = soft_threshold_vec(&a, 2.0);
        let expect = [re(3.0), re(0.0), C64::new(1.8, 2.4)];
        for (o, e) in out.iter().zip(expect) {
            assert!((o - e).norm() < 1e-15);
        }
        assert_eq!(soft_threshold_vec(&a, 0.0), a);
        assert_eq!(
            soft_threshold_vec(&CVector::zeros(4), 0.7),
            CVector::zeros(4)
        );
    }

    fn cplx() -> impl Strategy<Value = C64> {
        (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(a, b)| C64::new(a, b))
    }

    proptest! {
        #[test]
        fn is_a_contraction(a in cplx(), b in cplx(), kappa in 0.0..5.0f64) {
            let d = (soft_threshold(a, kappa) - soft_threshold(b, kappa)).norm();
            prop_assert!(d <= (a - b).norm() + 1e-12);
        }

        #[test]
        fn modulus_is_shrunk_by_kappa(a in cplx(), kappa in 0.0..5.0f64) {
            let out = soft_threshold(a, kappa).norm();
            prop_assert!((out - (a.norm() - kappa).max(0.0)).abs() < 1e-12);
        }
    }
}
