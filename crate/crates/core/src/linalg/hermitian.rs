//! Hermitian eigenvalues by cyclic complex Jacobi rotations.

use num_complex::Complex64;

use super::DenseMatrix;
use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn eig_hermitian(a: &DenseMatrix) -> Result<Vec<f64>> {
    let deviation = a.hermitian_defect();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = a.dim();
    // symmetrise so that rounding in the input cannot leak into the rotations
    let mut m = DenseMatrix::from_fn(n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let total = m.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * total * 0.1 || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, p, q);
            }
        }
    }

    let mut values: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Zeroes the (p, q) entry with the unitary `J = diag(1, e^{-iφ})·R(θ)`.
fn rotate(m: &mut DenseMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = m.dim();
    // J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
    let j10 = -phase.conj() * s;
    let j11 = phase.conj() * c;
    for k in 0..n {
        let x = m[(k, p)];
        let y = m[(k, q)];
        m[(k, p)] = x * c + y * j10;
        m[(k, q)] = x * s + y * j11;
    }
    for k in 0..n {
        let x = m[(p, k)];
        let y = m[(q, k)];
        m[(p, k)] = x * c + y * j10.conj();
        m[(q, k)] = x * s + y * j11.conj();
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
}
