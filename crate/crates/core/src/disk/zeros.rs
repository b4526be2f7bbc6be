use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Finite set `E` of distinct points on the unit circle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundarySet {
    points: Vec<Complex64>,
}

impl BoundarySet {
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return Err(invalid("boundary", "needs at least one point"));
        }
        if points.iter().any(|p| (p.norm() - 1.0).abs() > 1e-12) {
            return Err(invalid("boundary", "points must be unimodular"));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].iter().any(|q| (p - q).norm() <= 1e-9) {
                return Err(invalid("boundary", "points must be pairwise distinct"));
            }
        }
        Ok(Self { points })
    }

    /// Points at the given angles (radians).
    pub fn from_angles(angles: &[f64]) -> Result<Self> {
        Self::new(
            angles
                .iter()
                .map(|&t| Complex64::from_polar(1.0, t))
                .collect(),
        )
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dist(&self, z: Complex64) -> f64 {
        self.points
            .iter()
            .map(|p| (z - p).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Zeros inside the unit disk, with multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    zeros: Vec<(Complex64, u32)>,
}

impl ZeroSet {
    pub fn new(zeros: Vec<(Complex64, u32)>) -> Result<Self> {
        if zeros.iter().any(|(z, _)| !(z.norm() < 1.0)) {
            return Err(invalid("zeros", "must lie in the open unit disk"));
        }
        if zeros.iter().any(|&(_, m)| m == 0) {
            return Err(invalid("zeros", "multiplicities must be positive"));
        }
        Ok(Self { zeros })
    }

    pub fn simple(zeros: &[Complex64]) -> Result<Self> {
        Self::new(zeros.iter().map(|&z| (z, 1)).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Complex64, u32)> {
        self.zeros.iter()
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn concat(&self, other: &ZeroSet) -> ZeroSet {
        let mut zeros = self.zeros.clone();
        zeros.extend_from_slice(&other.zeros);
        ZeroSet { zeros }
    }
}

/// Weight `(1 − |z|)^a · Π_j |z − ζ_j|^{r_j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub radial_power: f64,
    pub point_powers: Vec<f64>,
}

impl WeightSpec {
    pub fn new(radial_power: f64, point_powers: Vec<f64>) -> Result<Self> {
        if !(radial_power >= 0.0 && radial_power.is_finite()) {
            return Err(invalid("radial_power", "must be finite and nonnegative"));
        }
        if point_powers.iter().any(|r| !(*r >= 0.0 && r.is_finite())) {
            return Err(invalid("point_powers", "must be finite and nonnegative"));
        }
        Ok(Self {
            radial_power,
            point_powers,
        })
    }

    /// Classical Blaschke weight `1 − |z|` for a boundary of `n` points.
    pub fn classical(n: usize) -> Self {
        Self {
            radial_power: 1.0,
            point_powers: vec![0.0; n],
        }
    }

    /// Weights `(1−|z|)^a Π|z−ζ_j|^{(q_j−1+ε)_+}` for point exponents `q_j`.
    pub fn from_growth(radial_power: f64, point_exponents: &[f64], eps: f64) -> Result<Self> {
        Self::new(
            radial_power,
            point_exponents
                .iter()
                .map(|&q| exponent_from_q(q, eps))
                .collect(),
        )
    }
}

/// `(q − 1 + ε)_+`.
pub fn exponent_from_q(q: f64, eps: f64) -> f64 {
    (q - 1.0 + eps).max(0.0)
}

/// `Σ m · (1 − |z|)^a · Π_j |z − ζ_j|^{r_j}` over the zero set.
pub fn weighted_zero_sum(
    zeros: &ZeroSet,
    boundary: &BoundarySet,
    weight: &WeightSpec,
) -> Result<f64> {
    if weight.point_powers.len() != boundary.len() {
        return Err(invalid(
            "weight",
            "one point power per boundary point is required",
        ));
    }
    Ok(zeros
        .iter()
        .map(|&(z, m)| {
            let radial = (1.0 - z.norm()).powf(weight.radial_power);
            let points: f64 = boundary
                .points()
                .iter()
                .zip(&weight.point_powers)
                .map(|(zeta, &r)| (z - zeta).norm().powf(r))
                .product();
            m as f64 * radial * points
        })
        .fold(0.0, |acc, x| acc + x))
}
