//! Eigenvalues of general complex matrices.
//!
//! The matrix is (optionally) balanced, reduced to upper Hessenberg form by
//! Householder reflections and then driven to Schur form by single-shift
//! complex QR sweeps with Wilkinson shifts. Eigenvectors, when requested,
//! come from back-substitution on the triangular factor.

use num_complex::Complex64;

use super::DenseMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Sweeps without a deflation before an exceptional shift is tried.
const EXCEPTIONAL_EVERY: usize = 10;

#[derive(Debug, Clone)]
pub struct EigOptions {
    /// Relative deflation threshold for subdiagonal entries.
    pub tol: f64,
    /// Total QR sweep budget.
    pub max_iter: usize,
    /// `None` balances unless the input is tridiagonal.
    pub balance: Option<bool>,
    pub vectors: bool,
}

impl EigOptions {
    pub fn for_dim(n: usize) -> Self {
        Self {
            tol: f64::EPSILON,
            max_iter: 30 * n.max(1),
            balance: None,
            vectors: false,
        }
    }

    pub fn with_vectors(mut self) -> Self {
        self.vectors = true;
        self
    }
}

#[derive(Debug, Clone)]
pub struct EigenResult {
    pub values: Vec<Complex64>,
    /// Unit-norm right eigenvectors stored as columns.
    pub vectors: Option<DenseMatrix>,
    pub iterations: usize,
}

/// Eigenvalues of `a` with default options apart from `tol` and `max_iter`.
pub fn eig_general(a: &DenseMatrix, tol: f64, max_iter: usize) -> Result<EigenResult> {
    let opts = EigOptions {
        tol,
        max_iter,
        ..EigOptions::for_dim(a.dim())
    };
    eig(a, &opts)
}

pub fn eig(a: &DenseMatrix, opts: &EigOptions) -> Result<EigenResult> {
    if !(opts.tol > 0.0) {
        return Err(crate::error::invalid("tol", "must be positive"));
    }
    let n = a.dim();
    let balance = opts.balance.unwrap_or_else(|| !a.is_tridiagonal());
    let mut h = a.clone();
    let scaling = if balance {
        Some(balance_in_place(&mut h))
    } else {
        None
    };

    let mut z = if opts.vectors {
        Some(DenseMatrix::identity(n))
    } else {
        None
    };
    if !h.is_upper_hessenberg() {
        reduce_to_hessenberg(&mut h, z.as_mut());
    }

    let (values, iterations) =
        hessenberg_qr(&mut h, z.as_mut(), opts.vectors, opts.tol, opts.max_iter)?;

    let vectors = z.map(|z| {
        let mut v = triangular_eigenvectors(&h, &z);
        if let Some(d) = &scaling {
            for i in 0..n {
                for j in 0..n {
                    v[(i, j)] *= d[i];
                }
            }
        }
        normalize_columns(&mut v);
        v
    });

    Ok(EigenResult {
        values,
        vectors,
        iterations,
    })
}

/// Diagonal similarity `D⁻¹ A D` by powers of two, equalising row and column
/// norms. Returns the diagonal of `D`.
fn balance_in_place(a: &mut DenseMatrix) -> Vec<f64> {
    const RADIX: f64 = 2.0;
    let n = a.dim();
    let mut d = vec![1.0; n];
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].norm();
                    r += a[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            let g0 = r / RADIX;
            while cc < g0 {
                f *= RADIX;
                cc *= RADIX * RADIX;
            }
            let g1 = r * RADIX;
            while cc > g1 {
                f /= RADIX;
                cc /= RADIX * RADIX;
            }
            if (c * f + r / f) < 0.95 * s {
                converged = false;
                d[i] *= f;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
    d
}

/// Householder reduction `Qᴴ A Q = H`; accumulates into `q` when given
/// (`q ← q·Q`).
pub fn reduce_to_hessenberg(a: &mut DenseMatrix, mut q: Option<&mut DenseMatrix>) {
    let n = a.dim();
    let mut v = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let alpha = a[(k + 1, k)];
        let tail_sq: f64 = ((k + 2)..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail_sq == 0.0 {
            continue;
        }
        let norm = (alpha.norm_sqr() + tail_sq).sqrt();
        let phase = if alpha == ZERO {
            ONE
        } else {
            alpha / alpha.norm()
        };
        // reflector maps x to -phase*norm*e1
        let v0 = alpha + phase * norm;
        v[k + 1] = ONE;
        for i in (k + 2)..n {
            v[i] = a[(i, k)] / v0;
        }
        let vnorm_sq: f64 = ((k + 1)..n).map(|i| v[i].norm_sqr()).sum();
        let tau = 2.0 / vnorm_sq;

        // left: A ← (I − τ v vᴴ) A on rows k+1.., columns k..
        for j in k..n {
            let mut dot = ZERO;
            for i in (k + 1)..n {
                dot += v[i].conj() * a[(i, j)];
            }
            let dot = dot * tau;
            for i in (k + 1)..n {
                let vi = v[i];
                a[(i, j)] -= vi * dot;
            }
        }
        // right: A ← A (I − τ v vᴴ) on columns k+1..
        for i in 0..n {
            let mut dot = ZERO;
            for j in (k + 1)..n {
                dot += a[(i, j)] * v[j];
            }
            let dot = dot * tau;
            for j in (k + 1)..n {
                let vj = v[j].conj();
                a[(i, j)] -= dot * vj;
            }
        }
        if let Some(q) = q.as_deref_mut() {
            for i in 0..n {
                let mut dot = ZERO;
                for j in (k + 1)..n {
                    dot += q[(i, j)] * v[j];
                }
                let dot = dot * tau;
                for j in (k + 1)..n {
                    let vj = v[j].conj();
                    q[(i, j)] -= dot * vj;
                }
            }
        }
        for i in (k + 2)..n {
            a[(i, k)] = ZERO;
        }
    }
}

/// Complex Givens rotation `[c s; -s̄ c]` sending `(f, g)` to `(r, 0)`.
#[inline]
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64, Complex64) {
    if g == ZERO {
        return (1.0, ZERO, f);
    }
    if f == ZERO {
        return (0.0, ONE, g);
    }
    let fa = f.norm();
    let ga = g.norm();
    let nrm = fa.hypot(ga);
    let sign = f / fa;
    let c = fa / nrm;
    let s = sign * g.conj() / nrm;
    (c, s, sign * nrm)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let p = (a - d) * 0.5;
    let bc = b * c;
    let disc = (p * p + bc).sqrt();
    let plus = p + disc;
    let minus = p - disc;
    let denom = if plus.norm() >= minus.norm() {
        plus
    } else {
        minus
    };
    if denom == ZERO {
        d
    } else {
        d - bc / denom
    }
}

/// Drives an upper Hessenberg matrix towards triangular form. With `want_t`
/// the full Schur factor is formed in `h` (needed for eigenvectors); otherwise
/// only the active window is updated.
fn hessenberg_qr(
    h: &mut DenseMatrix,
    mut z: Option<&mut DenseMatrix>,
    want_t: bool,
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<Complex64>, usize)> {
    let n = h.dim();
    let mut w = vec![ZERO; n];
    let hnorm = h.frobenius_norm();
    let safe_min = f64::MIN_POSITIVE * (n as f64 / f64::EPSILON);
    let mut total = 0usize;
    let mut its = 0usize;
    let mut ihi = n - 1;

    loop {
        // look for a negligible subdiagonal entry in the active block
        let mut l = 0;
        for k in (1..=ihi).rev() {
            let mut s = h[(k - 1, k - 1)].norm() + h[(k, k)].norm();
            if s == 0.0 {
                s = hnorm;
            }
            if h[(k, k - 1)].norm() <= (tol * s).max(safe_min) {
                h[(k, k - 1)] = ZERO;
                l = k;
                break;
            }
        }

        if l == ihi {
            w[ihi] = h[(ihi, ihi)];
            if ihi == 0 {
                break;
            }
            ihi -= 1;
            its = 0;
            continue;
        }

        if total >= max_iter {
            return Err(Error::NoConvergence {
                iterations: total,
                deflated: n - 1 - ihi,
                n,
            });
        }
        its += 1;
        total += 1;

        let shift = if its % (2 * EXCEPTIONAL_EVERY) == EXCEPTIONAL_EVERY {
            h[(l, l)] + 0.75 * h[(l + 1, l)].norm()
        } else if its.is_multiple_of(2 * EXCEPTIONAL_EVERY) {
            h[(ihi, ihi)] + 0.75 * h[(ihi, ihi - 1)].norm()
        } else {
            wilkinson_shift(
                h[(ihi - 1, ihi - 1)],
                h[(ihi - 1, ihi)],
                h[(ihi, ihi - 1)],
                h[(ihi, ihi)],
            )
        };

        let col_end = if want_t { n - 1 } else { ihi };
        let row_start = if want_t { 0 } else { l };
        for k in l..ihi {
            let (f, g) = if k == l {
                (h[(l, l)] - shift, h[(l + 1, l)])
            } else {
                (h[(k, k - 1)], h[(k + 1, k - 1)])
            };
            let (c, s, r) = givens(f, g);
            let col_start = if k == l {
                l
            } else {
                h[(k, k - 1)] = r;
                h[(k + 1, k - 1)] = ZERO;
                k
            };
            let sc = s.conj();
            for j in col_start..=col_end {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = y * c - sc * x;
            }
            let row_end = (k + 2).min(ihi);
            for i in row_start..=row_end {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * sc;
                h[(i, k + 1)] = y * c - x * s;
            }
            if let Some(z) = z.as_deref_mut() {
                for i in 0..n {
                    let x = z[(i, k)];
                    let y = z[(i, k + 1)];
                    z[(i, k)] = x * c + y * sc;
                    z[(i, k + 1)] = y * c - x * s;
                }
            }
        }
    }
    Ok((w, total))
}

/// Eigenvectors of the upper triangular Schur factor `t`, mapped back by `z`.
fn triangular_eigenvectors(t: &DenseMatrix, z: &DenseMatrix) -> DenseMatrix {
    let n = t.dim();
    let tnorm = t.max_abs();
    let small = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE);
    let mut x = vec![ZERO; n];
    let mut out = DenseMatrix::zeros(n);
    for k in 0..n {
        let lambda = t[(k, k)];
        x.iter_mut().for_each(|v| *v = ZERO);
        x[k] = ONE;
        for i in (0..k).rev() {
            let mut s = ZERO;
            for j in (i + 1)..=k {
                s += t[(i, j)] * x[j];
            }
            let mut d = t[(i, i)] - lambda;
            if d.norm() < small {
                d = Complex64::new(small, 0.0);
            }
            x[i] = -s / d;
            // rescale to keep the partial solution bounded
            let m = x[i].norm();
            if m > 1e100 {
                for v in x[i..=k].iter_mut() {
                    *v /= m;
                }
            }
        }
        for i in 0..n {
            let mut s = ZERO;
            for j in 0..=k {
                s += z[(i, j)] * x[j];
            }
            out[(i, k)] = s;
        }
    }
    out
}

fn normalize_columns(v: &mut DenseMatrix) {
    let n = v.dim();
    for j in 0..n {
        let nrm = (0..n).map(|i| v[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.0 {
            for i in 0..n {
                v[(i, j)] /= nrm;
            }
        }
    }
}
