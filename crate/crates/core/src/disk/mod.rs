//! Function theory on the unit disk.
//!
//! The exterior of the spectral segment `[-2, 2]` is identified with the unit
//! disk through the Joukowski map `λ = z + 1/z`. Everything else in this
//! module lives on the disk side of that identification.

mod growth;
mod harmonic;
mod zeros;

pub use growth::{
    circle_log_integral, classical_blaschke_bound, growth_coefficient_estimate, BlaschkeSupremum,
    Envelope, GrowthProfile, DEFAULT_GRID, SUPREMUM_RADII,
};
pub use harmonic::{
    arc_half_angle, harmonic_measure_arc, lemma1_margin, outer_modulus, LEMMA1_SEPARATION,
};
pub use zeros::{exponent_from_q, weighted_zero_sum, BoundarySet, WeightSpec, ZeroSet};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Distance below which a point counts as lying on `[-2, 2]`.
pub const SEGMENT_EPS: f64 = 1e-12;

/// `λ = z + 1/z`.
pub fn joukowski(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::JoukowskiPole);
    }
    Ok(z + z.inv())
}

/// Preimage of `λ` inside the unit disk.
///
/// Both roots of `z² − λz + 1` are formed; their product is one, so the root
/// of larger modulus is computed without cancellation and inverted.
pub fn inverse_joukowski(lambda: Complex64) -> Result<Complex64> {
    if !lambda.is_finite() {
        return Err(crate::error::invalid("lambda", "must be finite"));
    }
    if dist_to_segment(lambda) <= SEGMENT_EPS {
        return Err(Error::OnSegment(lambda));
    }
    let s = (lambda * lambda - 4.0).sqrt();
    let w1 = (lambda + s) * 0.5;
    let w2 = (lambda - s) * 0.5;
    let outer = if w1.norm() >= w2.norm() { w1 } else { w2 };
    Ok(outer.inv())
}

/// Euclidean distance from `λ` to `[-2, 2]`.
pub fn dist_to_segment(lambda: Complex64) -> f64 {
    if lambda.re.abs() <= 2.0 {
        lambda.im.abs()
    } else {
        let end = Complex64::new(2.0f64.copysign(lambda.re), 0.0);
        (lambda - end).norm()
    }
}

/// Blaschke factor `b_λ(z) = (z − λ)/(1 − λ̄ z)`.
pub fn blaschke_factor(z: Complex64, lambda: Complex64) -> Result<Complex64> {
    if lambda.norm() >= 1.0 {
        return Err(crate::error::invalid(
            "lambda",
            "must lie in the open unit disk",
        ));
    }
    if z.norm() > 1.0 + 1e-12 {
        return Err(crate::error::invalid(
            "z",
            "must lie in the closed unit disk",
        ));
    }
    let den = Complex64::new(1.0, 0.0) - lambda.conj() * z;
    if den == Complex64::new(0.0, 0.0) {
        return Err(crate::error::invalid("z", "pole of the Blaschke factor"));
    }
    Ok((z - lambda) / den)
}

/// The three ratios `((1−|z|)/(1−τ|z|), |z−ζ|/|τz−ζ|, (1+|z|)/(1+τ|z|))`,
/// which are nondecreasing in that order and bounded by 2.
pub fn elementary_ratio_bounds(z: Complex64, zeta: Complex64, tau: f64) -> Result<(f64, f64, f64)> {
    if z.norm() >= 1.0 {
        return Err(crate::error::invalid("z", "must lie in the open unit disk"));
    }
    if (zeta.norm() - 1.0).abs() > 1e-12 {
        return Err(crate::error::invalid("zeta", "must be unimodular"));
    }
    if !(0.0..1.0).contains(&tau) {
        return Err(crate::error::invalid("tau", "must lie in [0, 1)"));
    }
    let r = z.norm();
    Ok((
        (1.0 - r) / (1.0 - tau * r),
        (z - zeta).norm() / (z * tau - zeta).norm(),
        (1.0 + r) / (1.0 + tau * r),
    ))
}
