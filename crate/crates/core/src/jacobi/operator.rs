use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::linalg::{schatten_norm, DenseMatrix, Tridiagonal};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Jacobi matrix with `b` on the diagonal, `a` below and `c` above. Entries
/// past the stored `support` equal the free values `a = c = 1`, `b = 0`.
///
/// `a[k]` sits at row `k + 1`, column `k` (zero-based), `c[k]` at row `k`,
/// column `k + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiOperator {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    c: Vec<Complex64>,
}

impl JacobiOperator {
    /// Shorter sequences are padded with free values up to the longest one.
    pub fn new(
        mut a: Vec<Complex64>,
        mut b: Vec<Complex64>,
        mut c: Vec<Complex64>,
    ) -> Result<Self> {
        if a.iter().chain(&b).chain(&c).any(|v| !v.is_finite()) {
            return Err(invalid("jacobi", "entries must be finite"));
        }
        let k = a.len().max(b.len()).max(c.len());
        a.resize(k, ONE);
        b.resize(k, ZERO);
        c.resize(k, ONE);
        Ok(Self { a, b, c })
    }

    pub fn free() -> Self {
        Self {
            a: vec![],
            b: vec![],
            c: vec![],
        }
    }

    /// Free matrix with `b_1` replaced.
    pub fn rank_one(b1: Complex64) -> Self {
        Self {
            a: vec![ONE],
            b: vec![b1],
            c: vec![ONE],
        }
    }

    pub fn support(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    pub fn c(&self) -> &[Complex64] {
        &self.c
    }

    pub fn min_truncation(&self) -> usize {
        (self.support() + 2).max(2)
    }

    fn check_size(&self, n: usize) -> Result<()> {
        let min = self.min_truncation();
        if n < min {
            return Err(Error::TruncationTooSmall { n, min });
        }
        Ok(())
    }

    /// Upper-left `n × n` section in banded form.
    pub fn tridiagonal(&self, n: usize) -> Result<Tridiagonal> {
        self.check_size(n)?;
        let pick = |v: &[Complex64], k: usize, free: Complex64| v.get(k).copied().unwrap_or(free);
        Ok(Tridiagonal::new(
            (0..n - 1).map(|k| pick(&self.a, k, ONE)).collect(),
            (0..n).map(|k| pick(&self.b, k, ZERO)).collect(),
            (0..n - 1).map(|k| pick(&self.c, k, ONE)).collect(),
        ))
    }

    /// Upper-left `n × n` section.
    pub fn truncate(&self, n: usize) -> Result<DenseMatrix> {
        let t = self.tridiagonal(n)?;
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = t.diag[i];
            if i + 1 < n {
                m[(i + 1, i)] = t.sub[i];
                m[(i, i + 1)] = t.sup[i];
            }
        }
        Ok(m)
    }

    /// Nonzero part of `J − J_0`, the top-left `(support + 1)²` block.
    pub fn perturbation_block(&self) -> DenseMatrix {
        let k = self.support();
        let mut m = DenseMatrix::zeros(k + 1);
        for i in 0..k {
            m[(i, i)] = self.b[i];
            m[(i + 1, i)] = self.a[i] - ONE;
            m[(i, i + 1)] = self.c[i] - ONE;
        }
        m
    }

    /// `‖J − J_0‖_p`; `p = ∞` gives the operator norm.
    pub fn perturbation_schatten_norm(&self, p: f64) -> Result<f64> {
        schatten_norm(&self.perturbation_block(), p)
    }

    /// `J_0 + s (J − J_0)`.
    pub fn scaled(&self, s: f64) -> Self {
        let scale =
            |v: &[Complex64], free: Complex64| v.iter().map(|&x| free + (x - free) * s).collect();
        Self {
            a: scale(&self.a, ONE),
            b: scale(&self.b, ZERO),
            c: scale(&self.c, ONE),
        }
    }

    /// Entries `(Re b_k, (a_k + conj c_k)/2 − 1)` of the real part `Re(J − J_0)`.
    pub fn real_part_entries(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        (0..self.support()).map(|k| (self.b[k].re, (self.a[k] + self.c[k].conj()) / 2.0 - ONE))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    #[serde(default)]
    a: Vec<[f64; 2]>,
    #[serde(default)]
    b: Vec<[f64; 2]>,
    #[serde(default)]
    c: Vec<[f64; 2]>,
}

fn to_wire(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn from_wire(v: Vec<[f64; 2]>) -> Vec<Complex64> {
    v.into_iter()
        .map(|[re, im]| Complex64::new(re, im))
        .collect()
}

impl Serialize for JacobiOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            a: to_wire(&self.a),
            b: to_wire(&self.b),
            c: to_wire(&self.c),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for JacobiOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        JacobiOperator::new(from_wire(w.a), from_wire(w.b), from_wire(w.c))
            .map_err(serde::de::Error::custom)
    }
}
