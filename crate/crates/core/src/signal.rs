//! Complex sequences and Zak grids.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `exp(2*pi*i*k/n)` for `k` in `0..n`.
pub fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64;
            Complex64::new(theta.cos(), theta.sin())
        })
        .collect()
}

/// A length-`n` complex sequence, indexed by Z/n.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSeq(Vec<Complex64>);

impl ComplexSeq {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self(values)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn from_real<I: IntoIterator<Item = f64>>(values: I) -> Self {
        Self(values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    pub fn delta(n: usize) -> Self {
        let mut s = Self::zeros(n);
        s.0[0] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.0.iter()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(Complex64::norm_sqr).sum()
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &ComplexSeq) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(max_abs_diff(&self.0, &other.0))
    }
}

impl Index<usize> for ComplexSeq {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for ComplexSeq {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.0[i]
    }
}

impl From<Vec<Complex64>> for ComplexSeq {
    fn from(v: Vec<Complex64>) -> Self {
        Self(v)
    }
}

pub(crate) fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// An `rows x cols` grid holding a finite Zak transform, `rows` indexing
/// frequency `j` and `cols` indexing time `k`. Stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ZakArray {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ZakArray {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n(&self) -> usize {
        self.rows * self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.data[j * self.cols + k]
    }

    pub fn set(&mut self, j: usize, k: usize, v: Complex64) {
        self.data[j * self.cols + k] = v;
    }

    pub fn row(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.cols..(j + 1) * self.cols]
    }

    pub fn column(&self, k: usize) -> Vec<Complex64> {
        (0..self.rows).map(|j| self.get(j, k)).collect()
    }

    pub fn max_abs_diff(&self, other: &ZakArray) -> Result<f64> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(max_abs_diff(&self.data, &other.data))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_are_on_circle() {
        let r = roots_of_unity(12);
        assert_eq!(r[0], Complex64::new(1.0, 0.0));
        assert!((r[3] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(r.iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn zak_indexing() {
        let mut z = ZakArray::zeros(3, 5);
        z.set(2, 4, Complex64::new(1.0, 2.0));
        assert_eq!(z.row(2)[4], Complex64::new(1.0, 2.0));
        assert_eq!(z.column(4)[2], Complex64::new(1.0, 2.0));
        assert!(ZakArray::from_row_major(2, 2, vec![Complex64::new(0.0, 0.0); 3]).is_err());
    }

    #[test]
    fn seq_diff_length_mismatch() {
        let a = ComplexSeq::ones(3);
        let b = ComplexSeq::ones(4);
        assert!(a.max_abs_diff(&b).is_err());
        assert_eq!(a.max_abs_diff(&ComplexSeq::ones(3)).unwrap(), 0.0);
    }
}
