//! Dense complex vectors and row-major matrices.
//!
//! Every reduction in this module sums in ascending index order, so the same
//! inputs always produce the same bits regardless of how callers schedule work.

use std::ops::{Index, IndexMut, Range};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);

/// A non-empty complex vector.
#[derive(Clone, Debug, PartialEq)]
pub struct CVector {
    data: Vec<C64>,
}

impl CVector {
    /// Builds a vector, rejecting empty input and non-finite entries.
    pub fn new(data: Vec<C64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Dimension(
                "vector must have at least one entry".into(),
            ));
        }
        if let Some(pos) = data.iter().position(|z| !is_finite(*z)) {
            return Err(Error::numerical(format!(
                "vector entry {pos} is not finite"
            )));
        }
        Ok(Self { data })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub(crate) fn from_vec_unchecked(data: Vec<C64>) -> Self {
        debug_assert!(!data.is_empty());
        Self { data }
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "vector length must be positive");
        Self {
            data: vec![ZERO; len],
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Always false; present for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, C64> {
        self.data.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| is_finite(*z))
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.data)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Sum of entry moduli.
    pub fn norm_l1(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, z| acc + z.norm())
    }

    /// Inner product `<self, other> = sum conj(self_k) * other_k`.
    pub fn dot(&self, other: &CVector) -> Result<C64> {
        check_len(self.len(), other.len(), "dot")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(ZERO, |acc, (a, b)| acc + a.conj() * b))
    }

    pub fn sub(&self, other: &CVector) -> Result<CVector> {
        check_len(self.len(), other.len(), "sub")?;
        Ok(Self::from_vec_unchecked(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn add(&self, other: &CVector) -> Result<CVector> {
        check_len(self.len(), other.len(), "add")?;
        Ok(Self::from_vec_unchecked(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn scale(&self, factor: f64) -> CVector {
        Self::from_vec_unchecked(self.data.iter().map(|z| z * factor).collect())
    }

    /// Copy of the entries in `range`.
    pub fn segment(&self, range: Range<usize>) -> Result<CVector> {
        if range.start >= range.end || range.end > self.len() {
            return Err(Error::Index(format!(
                "segment {range:?} of a vector of length {}",
                self.len()
            )));
        }
        Ok(Self::from_vec_unchecked(self.data[range].to_vec()))
    }

    /// Concatenates segments in order.
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a CVector>) -> Result<CVector> {
        let data: Vec<C64> = parts
            .into_iter()
            .flat_map(|p| p.data.iter().copied())
            .collect();
        if data.is_empty() {
            return Err(Error::Dimension("nothing to concatenate".into()));
        }
        Ok(Self::from_vec_unchecked(data))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CVector) -> Result<f64> {
        check_len(self.len(), other.len(), "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm())))
    }
}

impl Index<usize> for CVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.data[i]
    }
}

impl IndexMut<usize> for CVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.data[i]
    }
}

impl TryFrom<Vec<C64>> for CVector {
    type Error = Error;
    fn try_from(data: Vec<C64>) -> Result<Self> {
        Self::new(data)
    }
}

/// A dense complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix must be non-empty, got {rows}x{cols}"
            )));
        }
        let expected = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::Dimension(format!("{rows}x{cols} overflows")))?;
        if data.len() != expected {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {expected} entries, got {}",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !is_finite(*z)) {
            return Err(Error::numerical(format!(
                "matrix entry ({}, {}) is not finite",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub(crate) fn from_vec_unchecked(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        debug_assert_eq!(rows * cols, data.len());
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> C64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| is_finite(*z))
    }

    pub fn scale(&self, factor: f64) -> CMatrix {
        Self::from_vec_unchecked(
            self.rows,
            self.cols,
            self.data.iter().map(|z| z * factor).collect(),
        )
    }

    pub fn conj_transpose(&self) -> CMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).conj());
            }
        }
        Self::from_vec_unchecked(self.cols, self.rows, data)
    }

    /// Copy of the contiguous block `rows x cols`.
    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Result<CMatrix> {
        if rows.start >= rows.end
            || cols.start >= cols.end
            || rows.end > self.rows
            || cols.end > self.cols
        {
            return Err(Error::Index(format!(
                "block rows {rows:?} cols {cols:?} of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for r in rows.clone() {
            data.extend_from_slice(&self.row(r)[cols.clone()]);
        }
        Ok(Self::from_vec_unchecked(rows.len(), cols.len(), data))
    }
}

/// `y = A x`.
pub fn matvec(a: &CMatrix, x: &CVector) -> Result<CVector> {
    if a.cols != x.len() {
        return Err(Error::Dimension(format!(
            "matvec: {}x{} matrix times vector of length {}",
            a.rows,
            a.cols,
            x.len()
        )));
    }
    let xs = x.as_slice();
    let out = (0..a.rows)
        .map(|r| {
            a.row(r)
                .iter()
                .zip(xs)
                .fold(ZERO, |acc, (h, v)| acc + h * v)
        })
        .collect();
    Ok(CVector::from_vec_unchecked(out))
}

/// `x = A^* y`, the conjugate transpose applied without forming it.
pub fn adjoint_matvec(a: &CMatrix, y: &CVector) -> Result<CVector> {
    if a.rows != y.len() {
        return Err(Error::Dimension(format!(
            "adjoint_matvec: ({}x{})^* times vector of length {}",
            a.rows,
            a.cols,
            y.len()
        )));
    }
    let mut out = vec![ZERO; a.cols];
    // row-outer keeps each output entry summed in ascending row order
    for (r, yr) in y.iter().enumerate() {
        for (o, h) in out.iter_mut().zip(a.row(r)) {
            *o += h.conj() * yr;
        }
    }
    Ok(CVector::from_vec_unchecked(out))
}

pub(crate) fn norm_sqr(data: &[C64]) -> f64 {
    data.iter().fold(0.0, |acc, z| acc + z.norm_sqr())
}

/// `sum |a_k - b_k|^2` without allocating.
pub(crate) fn dist_sqr(a: &[C64], b: &[C64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(0.0, |acc, (x, y)| acc + (x - y).norm_sqr())
}

pub(crate) fn is_finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn check_len(a: usize, b: usize, what: &str) -> Result<()> {
    if a != b {
        return Err(Error::Dimension(format!(
            "{what}: lengths {a} and {b} differ"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_matvec_is_identity() {
        let x = CVector::new(vec![c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!(matvec(&CMatrix::identity(3), &x).unwrap(), x);
    }

    #[test]
    fn zero_matrix_annihilates() {
        let x = CVector::new(vec![c(1.0, 2.0), c(3.0, -1.0), c(0.5, 0.5)]).unwrap();
        let y = matvec(&CMatrix::zeros(2, 3), &x).unwrap();
        assert_eq!(y.as_slice(), &[ZERO, ZERO]);
    }

    #[test]
    fn small_hand_expansion() {
        let a = CMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.0, 1.0), ZERO, c(2.0, 0.0)]).unwrap();
        let x = CVector::from_real(&[1.0, 1.0]).unwrap();
        let y = matvec(&a, &x).unwrap();
        assert_eq!(y.as_slice(), &[c(1.0, 1.0), c(2.0, 0.0)]);
    }

    #[test]
    fn adjoint_conjugates() {
        let a = CMatrix::new(1, 1, vec![c(0.0, 1.0)]).unwrap();
        let y = adjoint_matvec(&a, &CVector::from_real(&[1.0]).unwrap()).unwrap();
        assert_eq!(y.as_slice(), &[c(0.0, -1.0)]);

        let x = CVector::from_real(&[3.0, 4.0]).unwrap();
        assert_eq!(adjoint_matvec(&CMatrix::identity(2), &x).unwrap(), x);
    }

    #[test]
    fn dimension_errors() {
        let a = CMatrix::zeros(2, 3);
        let x = CVector::zeros(2);
        assert!(matches!(matvec(&a, &x), Err(Error::Dimension(_))));
        assert!(matches!(
            adjoint_matvec(&a, &CVector::zeros(3)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn rejects_non_finite_and_empty() {
        assert!(CVector::new(vec![]).is_err());
        assert!(CVector::new(vec![c(f64::NAN, 0.0)]).is_err());
        assert!(CMatrix::new(1, 2, vec![ZERO, c(0.0, f64::INFINITY)]).is_err());
        assert!(CMatrix::new(2, 2, vec![ZERO; 3]).is_err());
    }

    #[test]
    fn submatrix_bounds() {
        let m = CMatrix::from_fn(3, 4, |r, col| c(r as f64, col as f64)).unwrap();
        let s = m.submatrix(1..3, 2..4).unwrap();
        assert_eq!(s.shape(), (2, 2));
        assert_eq!(s.get(1, 0), c(2.0, 2.0));
        assert!(matches!(m.submatrix(0..4, 0..1), Err(Error::Index(_))));
    }
}
