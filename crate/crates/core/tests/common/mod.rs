//! Independent reference computations for the integration tests. Nothing
//! here calls the library's linear algebra or solvers; only the data
//! accessors are used.

#![allow(dead_code)]

use admm_split::{CMatrix, CVector, SensingProblem, C64};

pub fn naive_matvec(a: &CMatrix, x: &[C64]) -> Vec<C64> {
    let mut y = vec![C64::new(0.0, 0.0); a.rows()];
    for (r, yr) in y.iter_mut().enumerate() {
        for (c, xc) in x.iter().enumerate() {
            *yr += a.get(r, c) * xc;
        }
    }
    y
}

pub fn naive_adjoint(a: &CMatrix, y: &[C64]) -> Vec<C64> {
    let mut x = vec![C64::new(0.0, 0.0); a.cols()];
    for (c, xc) in x.iter_mut().enumerate() {
        for (r, yr) in y.iter().enumerate() {
            *xc += a.get(r, c).conj() * yr;
        }
    }
    x
}

pub fn norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn rel_diff(a: &[C64], b: &[C64]) -> f64 {
    let d: Vec<C64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    norm(&d) / norm(b).max(f64::MIN_POSITIVE)
}

pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn gauss_solve(mut a: Vec<Vec<C64>>, mut b: Vec<C64>) -> Vec<C64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&p, &q| a[p][col].norm().total_cmp(&a[q][col].norm()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        assert!(d.norm() > 0.0, "singular system");
        for r in col + 1..n {
            let f = a[r][col] / d;
            if f.norm() == 0.0 {
                continue;
            }
            for c in col..n {
                let t = a[col][c];
                a[r][c] -= f * t;
            }
            let t = b[col];
            b[r] -= f * t;
        }
    }
    let mut x = vec![C64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut acc = b[r];
        for c in r + 1..n {
            acc -= a[r][c] * x[c];
        }
        x[r] = acc / a[r][r];
    }
    x
}

/// Assembles `H^* H + rho I` entry by entry.
pub fn dense_regularized_gram(h: &CMatrix, rho: f64) -> Vec<Vec<C64>> {
    let n = h.cols();
    let mut g = vec![vec![C64::new(0.0, 0.0); n]; n];
    for (a, row) in g.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for r in 0..h.rows() {
                acc += h.get(r, a).conj() * h.get(r, b);
            }
            if a == b {
                acc += rho;
            }
            *slot = acc;
        }
    }
    g
}

fn shrink(z: C64, kappa: f64) -> C64 {
    let m = z.norm();
    if m <= kappa {
        C64::new(0.0, 0.0)
    } else {
        z * ((m - kappa) / m)
    }
}

pub fn lasso_value(h: &CMatrix, g: &[C64], lambda: f64, x: &[C64]) -> f64 {
    let r: Vec<C64> = naive_matvec(h, x)
        .iter()
        .zip(g)
        .map(|(a, b)| a - b)
        .collect();
    0.5 * r.iter().map(|z| z.norm_sqr()).sum::<f64>()
        + lambda * x.iter().map(|z| z.norm()).sum::<f64>()
}

/// Largest squared singular value of `h` by power iteration.
fn lipschitz(h: &CMatrix) -> f64 {
    let mut x = vec![C64::new(1.0, 0.0); h.cols()];
    let mut est = 0.0;
    for _ in 0..500 {
        let y = naive_adjoint(h, &naive_matvec(h, &x));
        let n = norm(&y);
        x = y.iter().map(|z| z / n).collect();
        if (n - est).abs() <= 1e-14 * n {
            est = n;
            break;
        }
        est = n;
    }
    est * (1.0 + 1e-9)
}

/// Proximal gradient on `0.5 |H x - g|^2 + lambda |x|_1` with step `1/L`,
/// iterated until the objective stops moving (relative change below
/// `stagnation` for 20 consecutive steps) or `max_iters` is hit.
pub fn ista(
    problem: &SensingProblem,
    lambda: f64,
    stagnation: f64,
    max_iters: usize,
) -> (Vec<C64>, f64) {
    let h = problem.h();
    let g = problem.g().as_slice();
    let l = lipschitz(h);
    let mut x = vec![C64::new(0.0, 0.0); h.cols()];
    let mut f = lasso_value(h, g, lambda, &x);
    let mut quiet = 0;
    for _ in 0..max_iters {
        let r: Vec<C64> = naive_matvec(h, &x)
            .iter()
            .zip(g)
            .map(|(a, b)| a - b)
            .collect();
        let grad = naive_adjoint(h, &r);
        x = x
            .iter()
            .zip(&grad)
            .map(|(xi, gi)| shrink(xi - gi / l, lambda / l))
            .collect();
        let next = lasso_value(h, g, lambda, &x);
        if (f - next).abs() <= stagnation * next.abs() {
            quiet += 1;
            if quiet >= 20 {
                f = next;
                break;
            }
        } else {
            quiet = 0;
        }
        f = next;
    }
    (x, f)
}

pub fn lambda_rel(problem: &SensingProblem, rel: f64) -> f64 {
    let hg = naive_adjoint(problem.h(), problem.g().as_slice());
    rel * hg.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn cvec(x: Vec<C64>) -> CVector {
    CVector::new(x).unwrap()
}

/// FNV-1a over a byte stream.
pub fn fnv1a(bytes: impl IntoIterator<Item = u8>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
