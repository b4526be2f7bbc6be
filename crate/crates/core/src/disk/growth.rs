//! Circle means of `log|f|` and empirical growth envelopes.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::BoundarySet;
use crate::error::{invalid, Error, Result};

pub const DEFAULT_GRID: usize = 2048;

/// Radii standing in for the supremum over `r < 1`.
pub const SUPREMUM_RADII: [f64; 4] = [0.9, 0.99, 0.999, 0.9999];

/// Mean of `log|f(rζ)|` over the circle by the trapezoidal rule on `n_grid`
/// equispaced nodes.
pub fn circle_log_integral<F>(f: F, r: f64, n_grid: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(r > 0.0 && r < 1.0) {
        return Err(invalid("r", "must lie in (0, 1)"));
    }
    if n_grid == 0 {
        return Err(Error::EmptyGrid);
    }
    let mut sum = 0.0;
    for k in 0..n_grid {
        let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / n_grid as f64);
        let m = f(z).norm();
        if !(m >= 1e-300) {
            return Err(Error::SampledZero(z));
        }
        sum += m.ln();
    }
    Ok(sum / n_grid as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeSupremum {
    /// `(r, ∫ log|f(rζ)| dm − log|f(0)|)` for each radius.
    pub values: Vec<(f64, f64)>,
    pub supremum: f64,
    /// Increments between successive radii fail to decay.
    pub diverging: bool,
}

/// Right-hand side of the classical Blaschke bound, with the supremum over
/// `r` replaced by a maximum over [`SUPREMUM_RADII`].
pub fn classical_blaschke_bound<F>(f: F, n_grid: usize) -> Result<BlaschkeSupremum>
where
    F: Fn(Complex64) -> Complex64,
{
    let at_zero = f(Complex64::new(0.0, 0.0)).norm();
    if !(at_zero > 0.0) {
        return Err(Error::SampledZero(Complex64::new(0.0, 0.0)));
    }
    let mut values = Vec::with_capacity(SUPREMUM_RADII.len());
    for &r in &SUPREMUM_RADII {
        values.push((r, circle_log_integral(&f, r, n_grid)? - at_zero.ln()));
    }
    let supremum = values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    let steps: Vec<f64> = values.windows(2).map(|w| w[1].1 - w[0].1).collect();
    let scale = supremum.abs().max(1.0);
    let diverging = steps
        .windows(2)
        .all(|s| s[1] > 1e-9 * scale && s[1] >= 0.5 * s[0]);
    Ok(BlaschkeSupremum {
        values,
        supremum,
        diverging,
    })
}

/// How the point singularities enter the envelope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Envelope {
    /// `(1 − |z|)^{-p} · dist(z, E)^{-q}`; all point exponents must agree.
    Distance,
    /// `(1 − |z|)^{-p} · Π_j |z − ζ_j|^{-q_j}`.
    Product,
}

/// Growth bound `log|f(z)| ≤ D · h(z)` with envelope `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthProfile {
    pub boundary: BoundarySet,
    pub radial_exponent: f64,
    pub point_exponents: Vec<f64>,
    pub coefficient: f64,
    pub envelope: Envelope,
}

impl GrowthProfile {
    pub fn new(
        boundary: BoundarySet,
        radial_exponent: f64,
        point_exponents: Vec<f64>,
        coefficient: f64,
        envelope: Envelope,
    ) -> Result<Self> {
        if point_exponents.len() != boundary.len() {
            return Err(invalid(
                "point_exponents",
                "one exponent per boundary point",
            ));
        }
        if !(radial_exponent >= 0.0 && radial_exponent.is_finite()) {
            return Err(invalid("radial_exponent", "must be finite and nonnegative"));
        }
        if point_exponents
            .iter()
            .any(|q| !(*q >= 0.0 && q.is_finite()))
        {
            return Err(invalid("point_exponents", "must be finite and nonnegative"));
        }
        if envelope == Envelope::Distance && point_exponents.windows(2).any(|w| w[0] != w[1]) {
            return Err(invalid(
                "point_exponents",
                "distance envelope needs a common exponent",
            ));
        }
        if !(coefficient > 0.0) {
            return Err(invalid("coefficient", "must be positive"));
        }
        Ok(Self {
            boundary,
            radial_exponent,
            point_exponents,
            coefficient,
            envelope,
        })
    }

    /// `h(z)`.
    pub fn envelope_at(&self, z: Complex64) -> f64 {
        let radial = (1.0 - z.norm()).powf(-self.radial_exponent);
        let points = match self.envelope {
            Envelope::Distance => self.boundary.dist(z).powf(-self.point_exponents[0]),
            Envelope::Product => self
                .boundary
                .points()
                .iter()
                .zip(&self.point_exponents)
                .map(|(zeta, &q)| (z - zeta).norm().powf(-q))
                .product(),
        };
        radial * points
    }

    /// `log|f(z)| − D·h(z)`; nonpositive where the bound holds.
    pub fn margin_at(&self, log_modulus: f64, z: Complex64) -> f64 {
        log_modulus - self.coefficient * self.envelope_at(z)
    }
}

/// Smallest `D ≥ 0` with `log|f| ≤ D·h` on every grid point.
pub fn growth_coefficient_estimate<F>(
    f: F,
    profile: &GrowthProfile,
    grid: &[Complex64],
) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut best = 0.0f64;
    for &z in grid {
        if !(z.norm() < 1.0) {
            return Err(invalid("grid", "points must lie in the open unit disk"));
        }
        let m = f(z).norm();
        if !(m > 0.0) {
            return Err(Error::SampledZero(z));
        }
        let h = profile.envelope_at(z);
        if !h.is_finite() {
            return Err(invalid(
                "grid",
                "grid point coincides with a boundary singularity",
            ));
        }
        best = best.max(m.ln() / h);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::blaschke_factor;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn disk_grid() -> Vec<Complex64> {
        let mut g = Vec::new();
        for i in 1..20 {
            for j in 0..24 {
                g.push(Complex64::from_polar(
                    i as f64 / 20.0,
                    2.0 * PI * j as f64 / 24.0 + 0.01,
                ));
            }
        }
        g
    }

    #[test]
    fn log_integral_of_constants_and_exponential() {
        assert_eq!(circle_log_integral(|_| c(1.0, 0.0), 0.5, 64).unwrap(), 0.0);
        let v = circle_log_integral(|z| z.exp(), 0.8, DEFAULT_GRID).unwrap();
        assert!(v.abs() < 1e-14);
    }

    #[test]
    fn single_factor_jensen() {
        let f = |z| blaschke_factor(z, c(0.5, 0.0)).unwrap();
        let v = circle_log_integral(f, 0.9, 4096).unwrap();
        // log|b(0)| + log(r/|a|) = log r
        assert!((v - 0.9f64.ln()).abs() < 1e-12);
        assert!((v - 0.5f64.ln() - 0.587787).abs() < 1e-6);
    }

    #[test]
    fn sampling_a_zero_is_an_error() {
        let f = |z: Complex64| z - c(0.5, 0.0);
        assert!(matches!(
            circle_log_integral(f, 0.5, 4),
            Err(Error::SampledZero(_))
        ));
        assert!(circle_log_integral(|z| z, 1.0, 4).is_err());
    }

    #[test]
    fn blaschke_supremum_converges_for_blaschke_product() {
        let zs = [c(0.5, 0.1), c(-0.2, 0.7)];
        let f = |z| zs.iter().map(|&a| blaschke_factor(z, a).unwrap()).product();
        let s = classical_blaschke_bound(f, DEFAULT_GRID).unwrap();
        // log(1/|a_1 a_2|) bounds Σ(1 − |a_j|)
        let expect: f64 = zs.iter().map(|a| -a.norm().ln()).sum();
        assert!((s.supremum - expect).abs() < 1e-3);
        assert!(!s.diverging);
        let classical: f64 = zs.iter().map(|a| 1.0 - a.norm()).sum();
        assert!(classical <= s.supremum);
    }

    #[test]
    fn blaschke_supremum_flags_growth() {
        // zero counts growing tenfold per decade towards the circle
        let zs: Vec<Complex64> = (1..=3)
            .flat_map(|k| {
                let r = 1.0 - 0.5 * 10f64.powi(-k);
                let m = 10usize.pow(k as u32);
                (0..m)
                    .map(move |j| Complex64::from_polar(r, 2.0 * PI * (j as f64 + 0.3) / m as f64))
            })
            .collect();
        let f = |z| zs.iter().map(|&a| blaschke_factor(z, a).unwrap()).product();
        let s = classical_blaschke_bound(f, 1 << 16).unwrap();
        assert!(s.values.iter().all(|v| v.1.is_finite()));
        assert!(s.diverging);
        let g = |z: Complex64| (c(0.01, 0.0) / (c(1.2, 0.0) - z)).exp();
        assert!(!classical_blaschke_bound(g, DEFAULT_GRID).unwrap().diverging);
    }

    #[test]
    fn growth_estimates() {
        let e = BoundarySet::new(vec![c(1.0, 0.0)]).unwrap();
        let profile =
            GrowthProfile::new(e.clone(), 0.0, vec![1.0], 1.0, Envelope::Distance).unwrap();
        let grid = disk_grid();
        assert_eq!(
            growth_coefficient_estimate(|_| c(1.0, 0.0), &profile, &grid).unwrap(),
            0.0
        );
        let d = growth_coefficient_estimate(
            |z| (c(1.0, 0.0) / (c(1.0, 0.0) - z)).exp(),
            &profile,
            &grid,
        )
        .unwrap();
        assert!(d <= 1.0 && d > 0.5);
        let d = growth_coefficient_estimate(|_| c(0.0, 3.0), &profile, &grid).unwrap();
        let hmin = grid
            .iter()
            .map(|&z| profile.envelope_at(z))
            .fold(f64::INFINITY, f64::min);
        assert!((d - 3f64.ln() / hmin).abs() < 1e-14);
        assert_eq!(
            growth_coefficient_estimate(|_| c(1.0, 0.0), &profile, &[]),
            Err(Error::EmptyGrid)
        );
    }

    #[test]
    fn product_and_distance_envelopes_agree_for_one_point() {
        let e = BoundarySet::from_angles(&[0.4]).unwrap();
        let a = GrowthProfile::new(e.clone(), 1.5, vec![2.0], 1.0, Envelope::Distance).unwrap();
        let b = GrowthProfile::new(e, 1.5, vec![2.0], 1.0, Envelope::Product).unwrap();
        let z = c(0.3, 0.2);
        assert!((a.envelope_at(z) - b.envelope_at(z)).abs() < 1e-12 * a.envelope_at(z));
    }
}
