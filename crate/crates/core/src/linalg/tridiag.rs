//! Banded LU with partial pivoting for complex tridiagonal systems.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Tridiagonal matrix given by its three diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    /// `sub[i]` sits at row `i + 1`, column `i`.
    pub sub: Vec<Complex64>,
    pub diag: Vec<Complex64>,
    /// `sup[i]` sits at row `i`, column `i + 1`.
    pub sup: Vec<Complex64>,
}

impl Tridiagonal {
    pub fn new(sub: Vec<Complex64>, diag: Vec<Complex64>, sup: Vec<Complex64>) -> Self {
        assert!(!diag.is_empty());
        assert_eq!(sub.len() + 1, diag.len());
        assert_eq!(sup.len() + 1, diag.len());
        Self { sub, diag, sup }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn shifted(&self, shift: Complex64) -> Self {
        Self {
            sub: self.sub.clone(),
            diag: self.diag.iter().map(|d| d - shift).collect(),
            sup: self.sup.clone(),
        }
    }

    pub fn norm_max(&self) -> f64 {
        self.sub
            .iter()
            .chain(&self.diag)
            .chain(&self.sup)
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.sup[i] * x[i + 1];
                }
                s
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct TridiagonalLu {
    // U has diagonal `d`, first superdiagonal `du`, second superdiagonal `du2`
    d: Vec<Complex64>,
    du: Vec<Complex64>,
    du2: Vec<Complex64>,
    mult: Vec<Complex64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    /// Factors `T` with row interchanges. Exactly zero pivots are replaced by
    /// `zero_pivot` when given, otherwise they are reported as singular.
    pub fn factor(t: &Tridiagonal, zero_pivot: Option<f64>) -> Result<Self> {
        let n = t.dim();
        let mut d = t.diag.clone();
        let mut du = t.sup.clone();
        let mut dl = t.sub.clone();
        let mut du2 = vec![ZERO; n.saturating_sub(2)];
        let mut mult = vec![ZERO; n.saturating_sub(1)];
        let mut swapped = vec![false; n.saturating_sub(1)];

        let fix = |v: &mut Complex64, k: usize| -> Result<()> {
            if *v == ZERO {
                match zero_pivot {
                    Some(eps) => *v = Complex64::new(eps, 0.0),
                    None => return Err(Error::Singular(k)),
                }
            }
            Ok(())
        };

        for i in 0..n.saturating_sub(1) {
            if d[i].norm() >= dl[i].norm() {
                fix(&mut d[i], i)?;
                let m = dl[i] / d[i];
                d[i + 1] -= m * du[i];
                mult[i] = m;
            } else {
                let m = d[i] / dl[i];
                d[i] = dl[i];
                let tmp = d[i + 1];
                d[i + 1] = du[i] - m * tmp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -m * du[i + 1];
                }
                du[i] = tmp;
                mult[i] = m;
                swapped[i] = true;
            }
            dl[i] = ZERO;
        }
        fix(&mut d[n - 1], n - 1)?;
        Ok(Self {
            d,
            du,
            du2,
            mult,
            swapped,
        })
    }

    pub fn solve_in_place(&self, b: &mut [Complex64]) {
        let n = self.d.len();
        assert_eq!(b.len(), n);
        for i in 0..n.saturating_sub(1) {
            let m = self.mult[i];
            if self.swapped[i] {
                let bi = b[i];
                b[i] = b[i + 1];
                b[i + 1] = bi - m * b[i + 1];
            } else {
                b[i + 1] -= m * b[i];
            }
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= self.du[i] * b[i + 1];
            }
            if i + 2 < n {
                s -= self.du2[i] * b[i + 2];
            }
            b[i] = s / self.d[i];
        }
    }
}

/// Right eigenvector of `t` for an (approximate) eigenvalue `lambda` by
/// inverse iteration. Returned with unit Euclidean norm.
pub fn inverse_iteration(t: &Tridiagonal, lambda: Complex64, iterations: usize) -> Vec<Complex64> {
    let n = t.dim();
    let scale = t.norm_max().max(lambda.norm()).max(1.0);
    let lu = TridiagonalLu::factor(&t.shifted(lambda), Some(f64::EPSILON * scale))
        .expect("zero pivots are replaced");
    // deterministic start with no special alignment to any eigenvector
    let mut x: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0, 0.5 * ((i as f64) * 0.7).sin()))
        .collect();
    normalize(&mut x);
    for _ in 0..iterations.max(1) {
        lu.solve_in_place(&mut x);
        normalize(&mut x);
    }
    x
}

fn normalize(x: &mut [Complex64]) {
    let nrm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    if nrm > 0.0 && nrm.is_finite() {
        for v in x.iter_mut() {
            *v /= nrm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample(n: usize) -> Tridiagonal {
        Tridiagonal::new(
            (0..n - 1).map(|i| c(1.0 + 0.1 * i as f64, -0.3)).collect(),
            (0..n).map(|i| c(0.01 * i as f64, 0.2)).collect(),
            (0..n - 1).map(|i| c(0.5, 0.05 * i as f64)).collect(),
        )
    }

    #[test]
    fn solve_matches_matvec() {
        for n in [1, 2, 3, 7, 40] {
            let t = sample(n);
            let b: Vec<Complex64> = (0..n).map(|i| c(i as f64, 1.0 - i as f64)).collect();
            let mut x = b.clone();
            TridiagonalLu::factor(&t, None)
                .unwrap()
                .solve_in_place(&mut x);
            let r = t.matvec(&x);
            let res: f64 = r
                .iter()
                .zip(&b)
                .map(|(u, v)| (u - v).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let xn: f64 = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            assert!(res <= 1e-13 * t.norm_max() * xn, "n={n} residual {res:e}");
        }
    }

    #[test]
    fn pivoting_handles_zero_diagonal() {
        // free Jacobi section has zero diagonal; plain Thomas would divide by zero
        let n = 6;
        let t = Tridiagonal::new(
            vec![c(1.0, 0.0); n - 1],
            vec![c(0.0, 0.0); n],
            vec![c(1.0, 0.0); n - 1],
        );
        let x: Vec<Complex64> = (0..n).map(|i| c(1.0, i as f64)).collect();
        let mut b = t.matvec(&x);
        TridiagonalLu::factor(&t, None)
            .unwrap()
            .solve_in_place(&mut b);
        for (u, v) in x.iter().zip(&b) {
            assert!((u - v).norm() < 1e-12);
        }
    }

    #[test]
    fn singular_is_reported() {
        let t = Tridiagonal::new(
            vec![c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0)],
        );
        assert!(matches!(
            TridiagonalLu::factor(&t, None),
            Err(Error::Singular(1))
        ));
    }

    #[test]
    fn inverse_iteration_finds_rank_one_eigenvector() {
        // b_1 = 2 on the free matrix: eigenvalue 2.5 with eigenvector ~ 2^{-k}
        let n = 60;
        let mut diag = vec![c(0.0, 0.0); n];
        diag[0] = c(2.0, 0.0);
        let t = Tridiagonal::new(vec![c(1.0, 0.0); n - 1], diag, vec![c(1.0, 0.0); n - 1]);
        let v = inverse_iteration(&t, c(2.5, 0.0), 3);
        let ratio = v[1] / v[0];
        assert!((ratio - c(0.5, 0.0)).norm() < 1e-10);
        let r = t.matvec(&v);
        let res: f64 = r
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b * 2.5).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(res < 1e-12);
    }
}
