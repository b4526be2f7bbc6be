use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major data, rejecting non-finite entries.
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(Error::Shape { n, len: data.len() });
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / n,
                col: pos % n,
            });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Shape {
                    n,
                    len: n * (n - 1) + row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += aik * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// True when every entry below the first subdiagonal vanishes.
    pub fn is_upper_hessenberg(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..i.saturating_sub(1)).all(|j| self[(i, j)] == Complex64::new(0.0, 0.0)))
    }

    pub fn is_tridiagonal(&self) -> bool {
        let n = self.n;
        (0..n)
            .all(|i| (0..n).all(|j| i.abs_diff(j) <= 1 || self[(i, j)] == Complex64::new(0.0, 0.0)))
    }

    /// Relative Hermitian defect `‖A − A*‖_F / ‖A‖_F` (zero for the zero matrix).
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.n;
        let mut num = 0.0;
        for i in 0..n {
            for j in 0..n {
                num += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        let den = self.frobenius_norm();
        if den == 0.0 {
            0.0
        } else {
            num.sqrt() / den
        }
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;

    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.matmul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(DenseMatrix::new(0, vec![]), Err(Error::EmptyMatrix));
        assert!(matches!(
            DenseMatrix::new(2, vec![c(0.0, 0.0); 3]),
            Err(Error::Shape { .. })
        ));
        let mut data = vec![c(1.0, 0.0); 4];
        data[3] = c(f64::NAN, 0.0);
        assert_eq!(
            DenseMatrix::new(2, data),
            Err(Error::NonFinite { row: 1, col: 1 })
        );
    }

    #[test]
    fn structure_predicates() {
        let t =
            DenseMatrix::from_real_rows(&[&[1.0, 2.0, 0.0], &[3.0, 4.0, 5.0], &[0.0, 6.0, 7.0]])
                .unwrap();
        assert!(t.is_tridiagonal());
        assert!(t.is_upper_hessenberg());
        let full = DenseMatrix::from_fn(3, |_, _| c(1.0, 0.0));
        assert!(!full.is_upper_hessenberg());
    }

    #[test]
    fn matmul_and_adjoint() {
        let a = DenseMatrix::from_rows(&[
            vec![c(1.0, 1.0), c(2.0, 0.0)],
            vec![c(0.0, -1.0), c(3.0, 0.0)],
        ])
        .unwrap();
        let prod = &a * &DenseMatrix::identity(2);
        assert_eq!(prod, a);
        let h = a.adjoint().matmul(&a);
        assert!(h.hermitian_defect() < 1e-15);
        assert_eq!(a.trace(), c(4.0, 1.0));
    }
}
