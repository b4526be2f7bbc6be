//! Singular values and Schatten norms.
//!
//! Singular values are square roots of the eigenvalues of `A*A`. Tiny
//! singular values lose relative accuracy this way; Schatten sums are
//! dominated by the large ones so this is acceptable here.

use std::fmt;

use super::{eig_hermitian, DenseMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SingularValues {
    /// Nonnegative, descending.
    pub sigmas: Vec<f64>,
}

impl SingularValues {
    pub fn largest(&self) -> f64 {
        self.sigmas.first().copied().unwrap_or(0.0)
    }

    pub fn schatten(&self, p: SchattenExponent) -> f64 {
        match p {
            SchattenExponent::Infinity => self.largest(),
            SchattenExponent::Finite(p) => {
                let top = self.largest();
                if top == 0.0 {
                    return 0.0;
                }
                // factor out σ₁ to avoid overflow for large p
                let s: f64 = self.sigmas.iter().map(|s| (s / top).powf(p)).sum();
                top * s.powf(1.0 / p)
            }
        }
    }

    /// `‖A‖_p^p` (for `p = ∞` this is just `σ₁`).
    pub fn schatten_pow(&self, p: f64) -> f64 {
        self.sigmas.iter().map(|s| s.powf(p)).sum()
    }
}

/// Exponent `p ∈ [1, ∞]` of a Schatten norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchattenExponent {
    Finite(f64),
    Infinity,
}

impl SchattenExponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Self::Infinity)
        } else if p >= 1.0 {
            Ok(Self::Finite(p))
        } else {
            Err(Error::InvalidExponent(p))
        }
    }
}

impl From<u32> for SchattenExponent {
    fn from(p: u32) -> Self {
        assert!(p >= 1, "Schatten exponent must be at least 1");
        Self::Finite(p as f64)
    }
}

impl fmt::Display for SchattenExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(p) => write!(f, "{p}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

pub fn singular_values(a: &DenseMatrix) -> Result<SingularValues> {
    let gram = a.adjoint().matmul(a);
    let mut sigmas: Vec<f64> = eig_hermitian(&gram)?
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    sigmas.reverse();
    Ok(SingularValues { sigmas })
}

/// `‖A‖_p = (Σ σ_k^p)^{1/p}`, `‖A‖_∞ = σ₁`.
pub fn schatten_norm(a: &DenseMatrix, p: f64) -> Result<f64> {
    let p = SchattenExponent::new(p)?;
    Ok(singular_values(a)?.schatten(p))
}
