//! LU factorisation with partial pivoting and overflow-safe determinants.

use num_complex::Complex64;

use super::DenseMatrix;

/// Determinant split into `log|det|` and a unit phase, so that values spanning
/// hundreds of orders of magnitude stay representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDet {
    pub log_modulus: f64,
    pub phase: Complex64,
}

impl LogDet {
    pub const ONE: LogDet = LogDet {
        log_modulus: 0.0,
        phase: Complex64::new(1.0, 0.0),
    };

    pub const ZERO: LogDet = LogDet {
        log_modulus: f64::NEG_INFINITY,
        phase: Complex64::new(1.0, 0.0),
    };

    pub fn is_zero(&self) -> bool {
        self.log_modulus == f64::NEG_INFINITY
    }

    pub fn value(&self) -> Complex64 {
        if self.is_zero() {
            Complex64::new(0.0, 0.0)
        } else {
            self.phase * self.log_modulus.exp()
        }
    }

    /// Multiplies by `exp(w)`.
    pub fn mul_exp(self, w: Complex64) -> LogDet {
        if self.is_zero() {
            return self;
        }
        LogDet {
            log_modulus: self.log_modulus + w.re,
            phase: self.phase * Complex64::from_polar(1.0, w.im),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    swaps: usize,
    singular_at: Option<usize>,
}

impl Lu {
    pub fn factor(a: &DenseMatrix) -> Self {
        let n = a.dim();
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        let mut singular_at = None;
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[i * n + k].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmax == 0.0 {
                singular_at.get_or_insert(k);
                continue;
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let m = lu[i * n + k] / pivot;
                lu[i * n + k] = m;
                if m == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in (k + 1)..n {
                    let ukj = lu[k * n + j];
                    lu[i * n + j] -= m * ukj;
                }
            }
        }
        Self {
            n,
            lu,
            perm,
            swaps,
            singular_at,
        }
    }

    pub fn log_det(&self) -> LogDet {
        if self.singular_at.is_some() {
            return LogDet::ZERO;
        }
        let mut log_modulus = 0.0;
        let mut phase = if self.swaps.is_multiple_of(2) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(-1.0, 0.0)
        };
        for k in 0..self.n {
            let d = self.lu[k * self.n + k];
            let r = d.norm();
            log_modulus += r.ln();
            phase *= d / r;
        }
        // renormalise accumulated rounding in the phase
        phase /= phase.norm();
        LogDet { log_modulus, phase }
    }

    pub fn singular_at(&self) -> Option<usize> {
        self.singular_at
    }

    pub fn solve(&self, b: &[Complex64]) -> Option<Vec<Complex64>> {
        if self.singular_at.is_some() {
            return None;
        }
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in (i + 1)..n {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        Some(x)
    }
}

pub fn log_det(a: &DenseMatrix) -> LogDet {
    Lu::factor(a).log_det()
}

pub fn det(a: &DenseMatrix) -> Complex64 {
    log_det(a).value()
}
