//! Closed-form characteristic-polynomial roots for n ≤ 4.
//!
//! Used only as an independent check on the QR eigensolver: coefficients come
//! from the Faddeev–LeVerrier recursion and roots from the quadratic, Cardano
//! and Ferrari formulas, followed by guarded Newton polishing.

use num_complex::Complex64;

use super::DenseMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub fn char_poly_roots_oracle(a: &DenseMatrix) -> Result<Vec<Complex64>> {
    let n = a.dim();
    if n > 4 {
        return Err(Error::OracleDimension(n));
    }
    let coeffs = characteristic_polynomial(a);
    let mut roots = match n {
        1 => vec![-coeffs[0]],
        2 => quadratic_roots(coeffs[1], coeffs[0]).to_vec(),
        3 => cubic_roots(coeffs[2], coeffs[1], coeffs[0]).to_vec(),
        4 => quartic_roots(coeffs[3], coeffs[2], coeffs[1], coeffs[0]).to_vec(),
        _ => unreachable!(),
    };
    for r in roots.iter_mut() {
        *r = polish(&coeffs, *r);
    }
    Ok(roots)
}

/// Coefficients `c_0..c_{n-1}` of the monic `det(xI − A) = xⁿ + Σ c_k x^k`.
pub fn characteristic_polynomial(a: &DenseMatrix) -> Vec<Complex64> {
    let n = a.dim();
    let mut c = vec![ZERO; n + 1];
    c[n] = Complex64::new(1.0, 0.0);
    let mut m = DenseMatrix::zeros(n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a.matmul(&m);
        for i in 0..n {
            next[(i, i)] += c[n - k + 1];
        }
        m = next;
        c[n - k] = -a.matmul(&m).trace() / k as f64;
    }
    c.truncate(n);
    c
}

fn horner(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    // monic, leading coefficient implicit
    let mut p = Complex64::new(1.0, 0.0);
    let mut dp = ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

fn polish(coeffs: &[Complex64], mut x: Complex64) -> Complex64 {
    for _ in 0..3 {
        let (p, dp) = horner(coeffs, x);
        if dp == ZERO || p == ZERO {
            break;
        }
        let cand = x - p / dp;
        if horner(coeffs, cand).0.norm() < p.norm() {
            x = cand;
        } else {
            break;
        }
    }
    x
}

/// Roots of `x² + b x + c`.
pub fn quadratic_roots(b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = (b * b - 4.0 * c).sqrt();
    // avoid cancellation: pick the sign that adds magnitudes
    let q = if (b.conj() * disc).re >= 0.0 {
        -(b + disc) * 0.5
    } else {
        -(b - disc) * 0.5
    };
    if q == ZERO {
        [ZERO, -b]
    } else {
        [q, c / q]
    }
}

/// Roots of `x³ + a x² + b x + c` (Cardano).
pub fn cubic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 3] {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let u3a = -q / 2.0 + disc;
    let u3b = -q / 2.0 - disc;
    let u3 = if u3a.norm() >= u3b.norm() { u3a } else { u3b };
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    if u3 == ZERO {
        return [-shift; 3];
    }
    let u = u3.powf(1.0 / 3.0);
    let mut out = [ZERO; 3];
    let mut w = Complex64::new(1.0, 0.0);
    for slot in out.iter_mut() {
        let uk = u * w;
        let vk = -p / (3.0 * uk);
        *slot = uk + vk - shift;
        w *= omega;
    }
    out
}

/// Roots of `x⁴ + a x³ + b x² + c x + d` (Ferrari).
pub fn quartic_roots(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> [Complex64; 4] {
    let shift = a / 4.0;
    let a2 = a * a;
    let p = b - 3.0 * a2 / 8.0;
    let q = c - a * b / 2.0 + a2 * a / 8.0;
    let r = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;

    let scale = 1.0 + p.norm() + q.norm().sqrt() + r.norm().sqrt();
    let ys: [Complex64; 4] = if q.norm() <= 1e-14 * scale * scale * scale {
        // biquadratic y⁴ + p y² + r
        let [s1, s2] = quadratic_roots(p, r);
        let (t1, t2) = (s1.sqrt(), s2.sqrt());
        [t1, -t1, t2, -t2]
    } else {
        // resolvent cubic 8m³ + 8p m² + (2p² − 8r) m − q² = 0
        let ms = cubic_roots(p, p * p / 4.0 - r, -q * q / 8.0);
        let m = ms
            .iter()
            .copied()
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .unwrap();
        let s = (2.0 * m).sqrt();
        let t = q / (2.0 * s);
        // y² + p/2 + m = ±(s y − t)
        let half_p = p / 2.0;
        let [y1, y2] = quadratic_roots(-s, half_p + m + t);
        let [y3, y4] = quadratic_roots(s, half_p + m - t);
        [y1, y2, y3, y4]
    };
    ys.map(|y| y - shift)
}
