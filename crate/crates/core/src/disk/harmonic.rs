//! Harmonic measure of the arc `{ζ ∈ T : |1 − ζ| ≤ γ}` and the outer function
//! whose log-modulus it is.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::blaschke_factor;
use crate::error::{invalid, Result};

/// Separation factor `M/N` in the Blaschke-factor estimate.
pub const LEMMA1_SEPARATION: f64 = 200.0;

/// Half-angle `t(γ)` of the arc: `sin(t/2) = γ/2`.
pub fn arc_half_angle(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 2.0) {
        return Err(invalid("gamma", "must lie in (0, 2)"));
    }
    Ok(2.0 * (gamma / 2.0).asin())
}

/// Harmonic measure at `z` of the arc `[e^{-it(γ)}, e^{it(γ)}]`.
///
/// Computed as `(α(z) − t)/π` where `α(z) ∈ (0, 2π)` is the angle swept from
/// the direction of `e^{-it}` to that of `e^{it}` as seen from `z`. At the
/// origin this gives `t/π`.
pub fn harmonic_measure_arc(z: Complex64, gamma: f64) -> Result<f64> {
    let t = arc_half_angle(gamma)?;
    if !(z.norm() < 1.0) {
        return Err(invalid("z", "must lie in the open unit disk"));
    }
    let upper = Complex64::from_polar(1.0, t) - z;
    let lower = Complex64::from_polar(1.0, -t) - z;
    let mut alpha = (upper / lower).arg();
    if alpha < 0.0 {
        alpha += 2.0 * PI;
    }
    Ok(((alpha - t) / PI).clamp(0.0, 1.0))
}

/// `|g_γ(z)| = exp(ω_γ(z))`.
pub fn outer_modulus(z: Complex64, gamma: f64) -> Result<f64> {
    Ok(harmonic_measure_arc(z, gamma)?.exp())
}

/// Signed gap `log(1/|b_λ(z)|) − log(1/|λ|)/(4Nγ)`; nonpositive whenever
/// `|1 − z| = γ`, `|z| < 1` and `|1 − λ| ≥ 200Nγ`.
pub fn lemma1_margin(lambda: Complex64, z: Complex64, gamma: f64, n_points: usize) -> Result<f64> {
    if n_points == 0 {
        return Err(invalid("n_points", "must be positive"));
    }
    if !(gamma > 0.0) {
        return Err(invalid("gamma", "must be positive"));
    }
    let r = lambda.norm();
    if !(r > 0.0 && r < 1.0) {
        return Err(invalid("lambda", "must satisfy 0 < |lambda| < 1"));
    }
    let one = Complex64::new(1.0, 0.0);
    if ((one - z).norm() - gamma).abs() > 1e-12 || !(z.norm() < 1.0) {
        return Err(invalid("z", "must satisfy |1 - z| = gamma inside the disk"));
    }
    let n = n_points as f64;
    if (one - lambda).norm() < LEMMA1_SEPARATION * n * gamma {
        return Err(invalid(
            "lambda",
            "must satisfy |1 - lambda| >= 200 N gamma",
        ));
    }
    let b = blaschke_factor(z, lambda)?;
    Ok(-b.norm().ln() - (-r.ln()) / (4.0 * n * gamma))
}
