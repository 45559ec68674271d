//! Minimal dense square-matrix containers used by the eigensolvers and the
//! dense verifier.
//!
//! These are deliberately small: row-major storage, explicit `get`/`set`, and
//! only the handful of norms and products the algorithms in this crate need.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;

use crate::fmath;

/// Double-precision complex scalar used throughout the dense verifier.
pub type Complex64 = Complex<f64>;

/// Dense square real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Zero matrix of dimension `n`.
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Dimension (number of rows = number of columns).
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.n + c] = v;
    }

    /// Sets both `(r, c)` and `(c, r)` to `v`.
    #[inline]
    pub fn set_sym(&mut self, r: usize, c: usize, v: f64) {
        self.set(r, c, v);
        self.set(c, r, v);
    }

    /// Flat row-major view of the entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Frobenius norm (includes the diagonal).
    pub fn frobenius_norm(&self) -> f64 {
        fmath::sqrt(self.data.iter().map(|x| x * x).sum())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest magnitude of `a[r][c] - a[c][r]` over all entry pairs.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.n {
            for c in (r + 1)..self.n {
                worst = worst.max((self.get(r, c) - self.get(c, r)).abs());
            }
        }
        worst
    }

    /// Trace.
    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Adds `weight * v vᵀ` in place; `v.len()` must equal the dimension.
    pub fn rank_one_update(&mut self, weight: f64, v: &[f64]) {
        debug_assert_eq!(v.len(), self.n);
        for r in 0..self.n {
            let wr = weight * v[r];
            let row = &mut self.data[r * self.n..(r + 1) * self.n];
            for (entry, vc) in row.iter_mut().zip(v) {
                *entry += wr * vc;
            }
        }
    }
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of dimension `n`.
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Dimension (number of rows = number of columns).
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.n + c] = v;
    }

    /// Adds `v` to the entry at `(r, c)`.
    #[inline]
    pub fn add(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.n + c] += v;
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, self.get(c, r).conj());
            }
        }
        out
    }

    /// `tr(self† * rhs)` without forming the product.
    pub fn adjoint_trace_product(&self, rhs: &ComplexMatrix) -> Complex64 {
        debug_assert_eq!(self.n, rhs.n);
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest entry magnitude (hypot of the parts, overflow-safe).
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .fold(0.0, |m, z| m.max(fmath::hypot(z.re, z.im)))
    }

    /// Largest entry magnitude of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &ComplexMatrix) -> f64 {
        debug_assert_eq!(self.n, rhs.n);
        self.data.iter().zip(&rhs.data).fold(0.0, |m, (a, b)| {
            let d = a - b;
            m.max(fmath::hypot(d.re, d.im))
        })
    }
}
