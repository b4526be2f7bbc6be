//! Eigenvalue sums over the discrete spectrum and the perturbation norms that
//! bound them.

mod sweep;

pub use sweep::{
    lt_reports, ratio_sweep, DrawFailure, InequalityId, LTReport, ScaleRow, SweepConfig,
    SweepResult, SweepSummary,
};

use num_complex::Complex64;
use serde::Serialize;

use crate::disk::dist_to_segment;
use crate::error::{invalid, Error, Result};
use crate::jacobi::JacobiOperator;

/// `Σ m · w(λ)` with `w(λ) = dist/|λ²−4|^{(1−ε)/2}` for `p = 1` and
/// `w(λ) = dist^{p+1+ε}/|λ²−4|` for `p ≥ 2`.
pub fn lt_sum(spectrum: &[(Complex64, usize)], p: u32, eps: f64) -> Result<f64> {
    if p < 1 {
        return Err(invalid("p", "must be a positive integer"));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(invalid("eps", "must be positive"));
    }
    let mut sum = 0.0;
    for &(lambda, m) in spectrum {
        let d = dist_to_segment(lambda);
        let q = (lambda * lambda - 4.0).norm();
        if d == 0.0 || q == 0.0 {
            return Err(Error::OnSegment(lambda));
        }
        let w = if p == 1 {
            d / q.powf((1.0 - eps) / 2.0)
        } else {
            d.powf(p as f64 + 1.0 + eps) / q
        };
        sum += m as f64 * w;
    }
    Ok(sum)
}

/// `c_p = 3^{p−1/2}/2 · Γ(p+1)/Γ(p+3/2) · Γ(2)/Γ(3/2)`, evaluated through
/// `Γ(p+1)/Γ(p+3/2) · Γ(2)/Γ(3/2) = (4/π) Π_{k=1}^{p} 2k/(2k+1)`.
pub fn c_p(p: u32) -> f64 {
    let ratio: f64 = (1..=p)
        .map(|k| 2.0 * k as f64 / (2.0 * k as f64 + 1.0))
        .product();
    3f64.powf(p as f64 - 0.5) / 2.0 * 4.0 / std::f64::consts::PI * ratio
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem3Sides {
    /// `Σ (Re λ − 2)_+^p + Σ (Re λ + 2)_−^p`.
    pub lhs: f64,
    /// `c_p Σ (|Re b_k|^{p+1/2} + 4 |(a_k + conj c_k)/2 − 1|^{p+1/2})`.
    pub rhs_a: f64,
    /// `3^{p−1} Σ (|Re b_k|^p + 4 |(a_k + conj c_k)/2 − 1|^p)`.
    pub rhs_b: f64,
}

/// Both sides of the real-part eigenvalue bounds, with the right-hand sides
/// summed over the stored entries only (the free tail contributes nothing).
pub fn theorem3_sides(
    j: &JacobiOperator,
    spectrum: &[(Complex64, usize)],
    p: u32,
) -> Result<Theorem3Sides> {
    if p < 1 {
        return Err(invalid("p", "must be a positive integer"));
    }
    let pf = p as f64;
    let lhs = spectrum
        .iter()
        .map(|&(l, m)| {
            m as f64 * ((l.re - 2.0).max(0.0).powf(pf) + (-(l.re + 2.0)).max(0.0).powf(pf))
        })
        .fold(0.0, |acc, x| acc + x);
    let (mut sa, mut sb) = (0.0, 0.0);
    for (rb, off) in j.real_part_entries() {
        let (rb, off) = (rb.abs(), off.norm());
        sa += rb.powf(pf + 0.5) + 4.0 * off.powf(pf + 0.5);
        sb += rb.powf(pf) + 4.0 * off.powf(pf);
    }
    Ok(Theorem3Sides {
        lhs,
        rhs_a: c_p(p) * sa,
        rhs_b: 3f64.powf(pf - 1.0) * sb,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioBracket {
    pub relation: &'static str,
    pub min: f64,
    pub max: f64,
}

/// Largest radius of the annulus grid.
pub const LEMMA3_OUTER_RADIUS: f64 = 1.0 - 1e-3;

type Relation = fn(Complex64) -> f64;

fn dist_vs_radial(z: Complex64) -> f64 {
    let lambda = z + z.inv();
    dist_to_segment(lambda) / ((1.0 - z.norm()) * (1.0 - z * z).norm())
}

fn endpoint_plus(z: Complex64) -> f64 {
    (1.0 + z).norm_sqr() / (z + z.inv() + 2.0).norm()
}

fn endpoint_minus(z: Complex64) -> f64 {
    (1.0 - z).norm_sqr() / (z + z.inv() - 2.0).norm()
}

fn radial_vs_normalised(z: Complex64) -> f64 {
    let lambda = z + z.inv();
    (1.0 - z.norm()) / (dist_to_segment(lambda) / (lambda * lambda - 4.0).norm().sqrt())
}

/// Ranges of the three two-sided comparisons between `z` and `λ = z + 1/z`
/// over the annulus `δ ≤ |z| ≤ 1 − 10⁻³`:
///
/// * `dist(λ, [−2,2]) / ((1 − |z|)|1 − z²|)`
/// * `|1 ± z|² / |λ ± 2|` (both signs)
/// * `(1 − |z|) / (dist(λ, [−2,2]) / |λ² − 4|^{1/2})`
///
/// The scan is a `grid × grid` polar grid: radii spaced evenly from `δ` to
/// the outer radius, angles `2πj/grid`. When `grid` is a multiple of four the
/// angles include both axes, where the extremes sit on the two boundary
/// circles.
pub fn lemma3_ratio_scan(delta: f64, grid: usize) -> Result<[RatioBracket; 3]> {
    if !(delta > 0.0 && delta < LEMMA3_OUTER_RADIUS) {
        return Err(invalid("delta", "must lie in (0, 1 − 1e-3)"));
    }
    if grid < 2 {
        return Err(invalid("grid", "needs at least two points per direction"));
    }
    let relations: [&[Relation]; 3] = [
        &[dist_vs_radial],
        &[endpoint_plus, endpoint_minus],
        &[radial_vs_normalised],
    ];
    let names = [
        "dist-vs-radial",
        "endpoint-distance",
        "radial-vs-normalised-dist",
    ];
    let dr = (LEMMA3_OUTER_RADIUS - delta) / (grid - 1) as f64;
    let dt = std::f64::consts::TAU / grid as f64;
    let mut out = Vec::with_capacity(3);
    for (fs, name) in relations.iter().zip(names) {
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for a in 0..grid {
            for b in 0..grid {
                // the outer circle is hit exactly so that scans for different δ share it
                let r = if a + 1 == grid {
                    LEMMA3_OUTER_RADIUS
                } else {
                    delta + dr * a as f64
                };
                let z = Complex64::from_polar(r, dt * b as f64);
                for f in fs.iter() {
                    let v = f(z);
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
            }
        }
        out.push(RatioBracket {
            relation: name,
            min: lo,
            max: hi,
        });
    }
    Ok(out.try_into().expect("three relations"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::joukowski;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Γ(n + 1) for small n.
    fn factorial(n: u32) -> f64 {
        (1..=n).map(f64::from).product()
    }

    #[test]
    fn lt_sum_examples() {
        let s = [(c(2.5, 0.0), 1)];
        assert!((lt_sum(&s, 1, 0.1).unwrap() - 0.5 / 2.25f64.powf(0.45)).abs() < 1e-15);
        assert!((lt_sum(&s, 1, 0.1).unwrap() - 0.347127).abs() < 1e-6);
        assert!((lt_sum(&s, 2, 0.1).unwrap() - 0.5f64.powf(3.1) / 2.25).abs() < 1e-16);
        assert!((lt_sum(&s, 2, 0.1).unwrap() - 0.051835).abs() < 1e-6);
        assert_eq!(lt_sum(&[], 1, 0.1).unwrap(), 0.0);
        assert!(lt_sum(&[(c(2.0, 0.0), 1)], 1, 0.1).is_err());
        assert!(lt_sum(&[(c(1.0, 0.0), 1)], 2, 0.1).is_err());
        assert!(lt_sum(&s, 1, 0.0).is_err());
    }

    #[test]
    fn lt_sum_multiplicity_and_additivity() {
        let x = [(c(0.3, 1.1), 1)];
        let y = [(c(-2.6, 0.2), 1)];
        let both = [x[0], y[0]];
        for p in 1..=3 {
            let sx = lt_sum(&x, p, 0.2).unwrap();
            let sy = lt_sum(&y, p, 0.2).unwrap();
            assert!((lt_sum(&both, p, 0.2).unwrap() - sx - sy).abs() < 1e-15);
            assert!((lt_sum(&[(x[0].0, 3)], p, 0.2).unwrap() - 3.0 * sx).abs() < 1e-15);
        }
    }

    #[test]
    fn c_p_matches_half_integer_gamma() {
        let pi = std::f64::consts::PI;
        assert!((c_p(1) - 4.0 * 3f64.sqrt() / (3.0 * pi)).abs() < 1e-15);
        assert!((c_p(1) - 0.735105).abs() < 1e-6);
        for p in 1..=8u32 {
            // Γ(p+3/2) = √π (2p+2)! / (4^{p+1} (p+1)!), Γ(3/2) = √π/2
            let g_p32 =
                pi.sqrt() * factorial(2 * p + 2) / (4f64.powi(p as i32 + 1) * factorial(p + 1));
            let g_32 = pi.sqrt() / 2.0;
            let expect = 3f64.powf(p as f64 - 0.5) / 2.0 * factorial(p) / g_p32 * 1.0 / g_32;
            assert!((c_p(p) - expect).abs() < 1e-13 * expect, "p={p}");
        }
    }

    #[test]
    fn theorem3_examples() {
        let free = theorem3_sides(&JacobiOperator::free(), &[], 1).unwrap();
        assert_eq!((free.lhs, free.rhs_a, free.rhs_b), (0.0, 0.0, 0.0));
        let j = JacobiOperator::rank_one(c(2.0, 0.0));
        let s = theorem3_sides(&j, &[(c(2.5, 0.0), 1)], 1).unwrap();
        assert!((s.lhs - 0.5).abs() < 1e-15);
        assert!((s.rhs_a - c_p(1) * 2f64.powf(1.5)).abs() < 1e-14);
        assert!((s.rhs_a - 2.0792).abs() < 1e-4);
        assert!((s.rhs_b - 2.0).abs() < 1e-15);
        let left = theorem3_sides(&j, &[(c(-2.5, 1.0), 2)], 2).unwrap();
        assert!((left.lhs - 2.0 * 0.25).abs() < 1e-15);
    }

    #[test]
    fn lemma3_real_slice() {
        // on the real axis the first ratio is 1/(z(1+z)) and the second is z
        for z in [0.3, 0.5, 0.9, 0.99] {
            let lambda = joukowski(c(z, 0.0)).unwrap();
            let d = dist_to_segment(lambda);
            assert!((d - (1.0 - z) * (1.0 - z) / z).abs() < 1e-12);
            let first = d / ((1.0 - z) * (1.0 - z * z));
            assert!((first - 1.0 / (z * (1.0 + z))).abs() < 1e-9);
            let second = (1.0 - z) * (1.0 - z) / (lambda - 2.0).norm();
            assert!((second - z).abs() < 1e-12);
        }
    }

    #[test]
    fn lemma3_brackets() {
        let b = lemma3_ratio_scan(0.3, 200).unwrap();
        for r in &b {
            assert!(r.min >= 0.1 && r.max <= 10.0, "{r:?}");
        }
        assert!((b[1].min - 0.3).abs() < 1e-12);
        assert!(lemma3_ratio_scan(0.0, 10).is_err());
        assert!(lemma3_ratio_scan(0.5, 1).is_err());
    }
}
