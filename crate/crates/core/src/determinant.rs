//! Regularised determinants and perturbation determinants of Jacobi matrices.

use num_complex::Complex64;
use serde::Serialize;

use crate::disk::{dist_to_segment, inverse_joukowski, joukowski};
use crate::error::{invalid, Error, Result};
use crate::jacobi::JacobiOperator;
use crate::linalg::{log_det, DenseMatrix, LogDet, TridiagonalLu};

/// Points closer than this to `[−2, 2]` are rejected.
pub const MIN_SEGMENT_DISTANCE: f64 = 1e-8;

/// `det_p(I + A)` in log form.
pub fn log_det_regularized(a: &DenseMatrix, p: u32) -> Result<LogDet> {
    if p < 1 {
        return Err(invalid("p", "must be a positive integer"));
    }
    let n = a.dim();
    let base = log_det(&DenseMatrix::identity(n).add(a));
    // exp(Σ_{j<p} tr((−A)^j)/j)
    let minus_a = a.scale(Complex64::new(-1.0, 0.0));
    let mut power = minus_a.clone();
    let mut correction = Complex64::new(0.0, 0.0);
    for j in 1..p {
        if j > 1 {
            power = power.matmul(&minus_a);
        }
        correction += power.trace() / j as f64;
    }
    Ok(base.mul_exp(correction))
}

/// `det_p(I + A) = det(I + A) · exp(Σ_{j=1}^{p−1} tr((−A)^j)/j)`.
pub fn det_regularized(a: &DenseMatrix, p: u32) -> Result<Complex64> {
    Ok(log_det_regularized(a, p)?.value())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetSample {
    pub lambda: Complex64,
    /// Disk coordinate with `λ = z + 1/z`.
    pub z: Complex64,
    pub p: u32,
    pub value: Complex64,
    pub log_modulus: f64,
    /// `log|u_p| − ‖J − J_0‖_p^p / (p · dist(λ, [−2, 2])^p)`.
    pub bound_margin: f64,
}

fn check_lambda(lambda: Complex64) -> Result<f64> {
    let d = dist_to_segment(lambda);
    if !lambda.is_finite() {
        return Err(invalid("lambda", "must be finite"));
    }
    if !(d > MIN_SEGMENT_DISTANCE) {
        return Err(Error::NearSegment(lambda, d));
    }
    Ok(d)
}

/// `u_p` of the `n × n` sections, `det_p(I + (J_N − J0_N)(J0_N − λ)^{-1})`.
///
/// `J_N − J0_N` vanishes outside the leading `(K+1) × (K+1)` block, so only
/// that block of the resolvent is needed; it comes from `K + 1` banded solves.
pub fn perturbation_log_determinant(
    j: &JacobiOperator,
    lambda: Complex64,
    p: u32,
    n: usize,
) -> Result<LogDet> {
    check_lambda(lambda)?;
    if p < 1 {
        return Err(invalid("p", "must be a positive integer"));
    }
    let block = j.perturbation_block();
    let k1 = block.dim();
    if n < j.min_truncation() {
        return Err(Error::TruncationTooSmall {
            n,
            min: j.min_truncation(),
        });
    }
    let free = JacobiOperator::free().tridiagonal(n)?;
    let lu = TridiagonalLu::factor(&free.shifted(lambda), None)?;
    let mut resolvent = DenseMatrix::zeros(k1);
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for s in 0..k1 {
        col.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        col[s] = Complex64::new(1.0, 0.0);
        lu.solve_in_place(&mut col);
        for r in 0..k1 {
            resolvent[(r, s)] = col[r];
        }
    }
    log_det_regularized(&block.matmul(&resolvent), p)
}

pub fn perturbation_determinant(
    j: &JacobiOperator,
    lambda: Complex64,
    p: u32,
    n: usize,
) -> Result<DetSample> {
    let d = check_lambda(lambda)?;
    let ld = perturbation_log_determinant(j, lambda, p, n)?;
    let norm = j.perturbation_schatten_norm(p as f64)?;
    Ok(DetSample {
        lambda,
        z: inverse_joukowski(lambda)?,
        p,
        value: ld.value(),
        log_modulus: ld.log_modulus,
        bound_margin: ld.log_modulus - growth_exponent(norm, p, d),
    })
}

/// `‖J − J_0‖_p^p / (p · d^p)`.
fn growth_exponent(norm: f64, p: u32, d: f64) -> f64 {
    (norm / d).powi(p as i32) / p as f64
}

/// `f_p(z) = u_p(z + 1/z)`, with `f_p(0) = 1`.
pub fn disk_determinant(j: &JacobiOperator, z: Complex64, p: u32, n: usize) -> Result<DetSample> {
    if !(z.norm() < 1.0) {
        return Err(invalid("z", "must lie in the open unit disk"));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(DetSample {
            lambda: Complex64::new(f64::INFINITY, 0.0),
            z,
            p,
            value: Complex64::new(1.0, 0.0),
            log_modulus: 0.0,
            bound_margin: 0.0,
        });
    }
    let mut s = perturbation_determinant(j, joukowski(z)?, p, n)?;
    s.z = z;
    Ok(s)
}

/// Signed margins of the growth bounds at `λ`: the `det_p` bound, and for
/// `p = 1` also the bound
/// `log|f_1(z)| ≤ log(2‖J−J_0‖_1/|1−z²|) + 2‖J−J_0‖_1/|1−z²|`.
/// Nonpositive values mean the bound holds.
pub fn growth_bound_margins(
    j: &JacobiOperator,
    lambda: Complex64,
    p: u32,
    n: usize,
) -> Result<(f64, Option<f64>)> {
    let s = perturbation_determinant(j, lambda, p, n)?;
    if p != 1 {
        return Ok((s.bound_margin, None));
    }
    let norm1 = j.perturbation_schatten_norm(1.0)?;
    let w = 2.0 * norm1 / (1.0 - s.z * s.z).norm();
    Ok((s.bound_margin, Some(s.log_modulus - w.ln() - w)))
}

/// Relative change `|u^{(N)} − u^{(N+ΔN)}| / |u^{(N)}|`.
pub fn section_change(
    j: &JacobiOperator,
    lambda: Complex64,
    p: u32,
    n: usize,
    delta_n: usize,
) -> Result<f64> {
    let u = perturbation_log_determinant(j, lambda, p, n)?.value();
    let v = perturbation_log_determinant(j, lambda, p, n + delta_n)?.value();
    Ok((u - v).norm() / u.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn scalar_identities() {
        let a = c(0.3, -0.4);
        let m = DenseMatrix::from_diag(&[a]);
        let one = c(1.0, 0.0);
        assert!((det_regularized(&m, 1).unwrap() - (one + a)).norm() < 1e-15);
        assert!((det_regularized(&m, 2).unwrap() - (one + a) * (-a).exp()).norm() < 1e-15);
        assert!(
            (det_regularized(&m, 3).unwrap() - (one + a) * (-a + a * a / 2.0).exp()).norm() < 1e-15
        );
        let nil = DenseMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!((det_regularized(&nil, 1).unwrap() - one).norm() < 1e-15);
        assert!((det_regularized(&DenseMatrix::zeros(3), 4).unwrap() - one).norm() < 1e-15);
        assert!(det_regularized(&m, 0).is_err());
    }

    #[test]
    fn zero_perturbation_is_one() {
        for lambda in [c(3.0, 0.0), c(0.0, 1.0), c(-2.5, -0.1)] {
            for p in 1..=3 {
                let s = perturbation_determinant(&JacobiOperator::free(), lambda, p, 20).unwrap();
                assert!((s.value - c(1.0, 0.0)).norm() < 1e-14);
                assert_eq!(s.bound_margin, 0.0);
            }
        }
    }

    #[test]
    fn block_reduction_matches_full_section() {
        let j = JacobiOperator::new(
            vec![c(1.2, 0.1), c(0.8, 0.0)],
            vec![c(0.4, -0.2), c(0.0, 0.3)],
            vec![c(1.0, -0.5), c(1.1, 0.0)],
        )
        .unwrap();
        let n = 12;
        let lambda = c(1.0, 0.7);
        let jn = j.truncate(n).unwrap();
        let j0 = JacobiOperator::free().truncate(n).unwrap();
        let shift = DenseMatrix::identity(n).scale(lambda);
        let resolvent_cols: Vec<Vec<Complex64>> = {
            let lu = crate::linalg::Lu::factor(&j0.sub(&shift));
            (0..n)
                .map(|s| {
                    let mut e = vec![c(0.0, 0.0); n];
                    e[s] = c(1.0, 0.0);
                    lu.solve(&e).unwrap()
                })
                .collect()
        };
        let resolvent = DenseMatrix::from_fn(n, |r, s| resolvent_cols[s][r]);
        let full = jn.sub(&j0).matmul(&resolvent);
        for p in 1..=3 {
            let expect = det_regularized(&full, p).unwrap();
            let got = perturbation_log_determinant(&j, lambda, p, n)
                .unwrap()
                .value();
            assert!(
                (got - expect).norm() < 1e-12 * expect.norm().max(1.0),
                "p={p}"
            );
        }
    }

    #[test]
    fn zero_at_rank_one_eigenvalue() {
        let j = JacobiOperator::rank_one(c(2.0, 0.0));
        let at = perturbation_determinant(&j, c(2.5, 0.0), 1, 200).unwrap();
        assert!(at.value.norm() < 1e-12);
        let a = perturbation_determinant(&j, c(5.0, 0.0), 1, 100).unwrap();
        let b = perturbation_determinant(&j, c(5.0, 0.0), 1, 200).unwrap();
        assert!((a.value.norm() - b.value.norm()).abs() < 1e-8);
    }

    #[test]
    fn normalisation_at_infinity() {
        let j = JacobiOperator::rank_one(c(0.0, 2.0));
        for p in 1..=3 {
            let far = 1e3 * j.perturbation_schatten_norm(f64::INFINITY).unwrap() + 10.0;
            let s = perturbation_determinant(&j, c(0.0, far), p, 50).unwrap();
            assert!((s.value - c(1.0, 0.0)).norm() <= 0.1);
        }
        let s = disk_determinant(&j, c(1e-6, 0.0), 2, 50).unwrap();
        assert!((s.value - c(1.0, 0.0)).norm() < 1e-5);
        assert_eq!(
            disk_determinant(&j, c(0.0, 0.0), 2, 50).unwrap().value,
            c(1.0, 0.0)
        );
    }

    #[test]
    fn disk_composition() {
        let j = JacobiOperator::rank_one(c(2.0, 0.0));
        let lambda = c(2.5, 1.0);
        let z = inverse_joukowski(lambda).unwrap();
        let a = disk_determinant(&j, z, 2, 80).unwrap();
        let b = perturbation_determinant(&j, lambda, 2, 80).unwrap();
        assert!((a.value - b.value).norm() < 1e-12);
        let s = disk_determinant(&j, c(0.4, 0.0), 1, 100).unwrap();
        let t = disk_determinant(&j, c(0.4, 0.0), 1, 150).unwrap();
        assert!(s.value.norm() > 0.0);
        assert!((s.value - t.value).norm() < 1e-10);
    }

    #[test]
    fn growth_margins() {
        let j = JacobiOperator::rank_one(c(0.3, 0.0));
        let (m, f1) = growth_bound_margins(&j, c(3.0, 0.0), 1, 100).unwrap();
        assert!(m <= 0.0);
        assert!(f1.is_some());
        let (m, _) = growth_bound_margins(&JacobiOperator::free(), c(3.0, 0.0), 2, 100).unwrap();
        assert_eq!(m, 0.0);
    }

    #[test]
    fn near_segment_rejected() {
        let j = JacobiOperator::free();
        assert!(matches!(
            perturbation_determinant(&j, c(1.0, 1e-10), 1, 20),
            Err(Error::NearSegment(..))
        ));
    }
}
