//! Hermitian positive-definite Cholesky factorization `A = L L^*`.

use rayon::prelude::*;

use super::dense::{C64, ZERO};
use crate::error::{Error, Result};

// Below this size the per-column fork/join costs more than it saves.
const PAR_MIN_DIM: usize = 96;

/// Lower-triangular factor stored row-major (upper part is zero).
#[derive(Clone, Debug)]
pub struct Cholesky {
    n: usize,
    l: Vec<C64>,
}

impl Cholesky {
    /// Factors the `n x n` Hermitian matrix given row-major in `a`. Only the
    /// lower triangle of `a` is read.
    pub fn factor(n: usize, mut a: Vec<C64>) -> Result<Self> {
        assert_eq!(a.len(), n * n);
        // left-looking column sweep; column j of L is written in place of a
        for j in 0..n {
            let (head, tail) = a.split_at_mut((j + 1) * n);
            let row_j = &mut head[j * n..(j + 1) * n];
            let d = row_j[j].re - row_j[..j].iter().fold(0.0, |s, z| s + z.norm_sqr());
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::Singularity {
                    pivot: j,
                    message: format!("non-positive pivot {d:e}"),
                });
            }
            let pivot = d.sqrt();
            row_j[j] = C64::new(pivot, 0.0);
            for z in &mut row_j[j + 1..] {
                *z = ZERO;
            }
            let row_j: &[C64] = row_j;

            let update = |row_i: &mut [C64]| {
                let s = row_i[..j]
                    .iter()
                    .zip(&row_j[..j])
                    .fold(ZERO, |acc, (x, y)| acc + x * y.conj());
                row_i[j] = (row_i[j] - s) / pivot;
            };
            if n - j > PAR_MIN_DIM {
                tail.par_chunks_mut(n).for_each(update);
            } else {
                tail.chunks_mut(n).for_each(update);
            }
        }
        Ok(Self { n, l: a })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `L L^* x = b` in place.
    pub fn solve_in_place(&self, b: &mut [C64]) {
        let n = self.n;
        assert_eq!(b.len(), n);
        for i in 0..n {
            let row = &self.l[i * n..i * n + i];
            let s = row
                .iter()
                .zip(&b[..i])
                .fold(ZERO, |acc, (l, y)| acc + l * y);
            b[i] = (b[i] - s) / self.l[i * n + i].re;
        }
        for i in (0..n).rev() {
            let mut s = ZERO;
            for k in i + 1..n {
                s += self.l[k * n + i].conj() * b[k];
            }
            b[i] = (b[i] - s) / self.l[i * n + i].re;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_small_hermitian() {
        // A = [[4, 2i], [-2i, 5]] -> L = [[2, 0], [-i, 2]]
        let a = vec![
            C64::new(4.0, 0.0),
            C64::new(0.0, 2.0),
            C64::new(0.0, -2.0),
            C64::new(5.0, 0.0),
        ];
        let f = Cholesky::factor(2, a).unwrap();
        assert_eq!(f.l[0], C64::new(2.0, 0.0));
        assert_eq!(f.l[2], C64::new(0.0, -1.0));
        assert_eq!(f.l[3], C64::new(2.0, 0.0));

        // A x = b with x = (1, i): b = (4 + 2i*i, -2i + 5i) = (2, 3i)
        let mut b = vec![C64::new(2.0, 0.0), C64::new(0.0, 3.0)];
        f.solve_in_place(&mut b);
        assert!((b[0] - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((b[1] - C64::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn indefinite_matrix_is_singular() {
        let a = vec![
            C64::new(1.0, 0.0),
            C64::new(2.0, 0.0),
            C64::new(2.0, 0.0),
            C64::new(1.0, 0.0),
        ];
        assert!(matches!(
            Cholesky::factor(2, a),
            Err(Error::Singularity { pivot: 1, .. })
        ));
    }

    #[test]
    fn nan_is_singular() {
        let a = vec![C64::new(f64::NAN, 0.0)];
        assert!(matches!(
            Cholesky::factor(1, a),
            Err(Error::Singularity { .. })
        ));
    }
}
