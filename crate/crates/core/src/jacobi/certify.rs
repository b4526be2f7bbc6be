use num_complex::Complex64;
use serde::Serialize;

use super::JacobiOperator;
use crate::disk::dist_to_segment;
use crate::error::{invalid, Result};
use crate::linalg::tridiag::inverse_iteration;
use crate::linalg::{eig, EigOptions};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyOptions {
    pub n: usize,
    pub delta_n: usize,
    /// Candidates within this distance of `[−2, 2]` are rejected.
    pub eta: f64,
    pub tol_match: f64,
    pub tol_tail: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            n: 200,
            delta_n: 50,
            eta: 0.05,
            tol_match: 1e-6,
            tol_tail: 1e-8,
        }
    }
}

impl CertifyOptions {
    pub fn validate(&self, support: usize) -> Result<()> {
        if self.n < 8 * support || self.n < (support + 2).max(2) {
            return Err(invalid(
                "n",
                format!("must be at least {}", (8 * support).max(support + 2).max(2)),
            ));
        }
        if self.delta_n < 16 {
            return Err(invalid("delta_n", "must be at least 16"));
        }
        for (name, v) in [
            ("eta", self.eta),
            ("tol_match", self.tol_match),
            ("tol_tail", self.tol_tail),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(name, "must be positive"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectReason {
    NearEssential,
    Unmatched,
    Drift,
    Tail,
}

impl RejectReason {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::NearEssential => "near-essential",
            Self::Unmatched => "unmatched",
            Self::Drift => "drift",
            Self::Tail => "tail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifiedEigenvalue {
    pub lambda: Complex64,
    /// `|λ_N − λ_{N+ΔN}|`, worst over merged copies.
    pub drift: f64,
    /// Squared eigenvector mass in the last `⌈N/10⌉` components.
    pub tail_mass: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rejected {
    pub lambda: Complex64,
    pub reason: RejectReason,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifiedSpectrum {
    pub accepted: Vec<CertifiedEigenvalue>,
    pub rejected: Vec<Rejected>,
    pub truncation_sizes: (usize, usize),
}

impl CertifiedSpectrum {
    /// Accepted eigenvalues with multiplicities.
    pub fn multiset(&self) -> Vec<(Complex64, usize)> {
        self.accepted
            .iter()
            .map(|e| (e.lambda, e.multiplicity))
            .collect()
    }

    /// Accepted eigenvalues, each repeated by multiplicity.
    pub fn values(&self) -> Vec<Complex64> {
        self.accepted
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.lambda, e.multiplicity))
            .collect()
    }
}

fn spectrum_of(j: &JacobiOperator, n: usize) -> Result<Vec<Complex64>> {
    let m = j.truncate(n)?;
    Ok(eig(&m, &EigOptions::for_dim(n))?.values)
}

/// Eigenvalues of `J` off `[−2, 2]` that are stable between the sections of
/// size `N` and `N + ΔN` and whose eigenvectors decay inside the section.
pub fn certified_point_spectrum(
    j: &JacobiOperator,
    opts: &CertifyOptions,
) -> Result<CertifiedSpectrum> {
    opts.validate(j.support())?;
    let (n, m) = (opts.n, opts.n + opts.delta_n);
    let small = spectrum_of(j, n)?;
    let large = spectrum_of(j, m)?;

    let mut rejected = Vec::new();
    let mut candidates = Vec::new();
    for &lambda in &small {
        if dist_to_segment(lambda) > opts.eta {
            candidates.push(lambda);
        } else {
            rejected.push(Rejected {
                lambda,
                reason: RejectReason::NearEssential,
            });
        }
    }
    // partners may sit just inside the margin
    let partners: Vec<Complex64> = large
        .into_iter()
        .filter(|&l| dist_to_segment(l) > 0.5 * opts.eta)
        .collect();

    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, &u) in candidates.iter().enumerate() {
        for (k, &v) in partners.iter().enumerate() {
            pairs.push(((u - v).norm(), i, k));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut drift_of = vec![None; candidates.len()];
    let mut used = vec![false; partners.len()];
    for (d, i, k) in pairs {
        if drift_of[i].is_none() && !used[k] {
            drift_of[i] = Some(d);
            used[k] = true;
        }
    }

    let t = j.tridiagonal(n)?;
    let tail_len = n.div_ceil(10);
    let mut accepted: Vec<CertifiedEigenvalue> = Vec::new();
    for (i, &lambda) in candidates.iter().enumerate() {
        let Some(drift) = drift_of[i] else {
            rejected.push(Rejected {
                lambda,
                reason: RejectReason::Unmatched,
            });
            continue;
        };
        if drift > opts.tol_match {
            rejected.push(Rejected {
                lambda,
                reason: RejectReason::Drift,
            });
            continue;
        }
        let v = inverse_iteration(&t, lambda, 3);
        let tail_mass: f64 = v[n - tail_len..].iter().map(|x| x.norm_sqr()).sum();
        if tail_mass > opts.tol_tail {
            rejected.push(Rejected {
                lambda,
                reason: RejectReason::Tail,
            });
            continue;
        }
        match accepted
            .iter_mut()
            .find(|e| (e.lambda - lambda).norm() <= opts.tol_match)
        {
            Some(e) => {
                e.multiplicity += 1;
                e.drift = e.drift.max(drift);
                e.tail_mass = e.tail_mass.max(tail_mass);
            }
            None => accepted.push(CertifiedEigenvalue {
                lambda,
                drift,
                tail_mass,
                multiplicity: 1,
            }),
        }
    }
    accepted.sort_by(|x, y| {
        x.lambda
            .re
            .total_cmp(&y.lambda.re)
            .then(x.lambda.im.total_cmp(&y.lambda.im))
    });
    Ok(CertifiedSpectrum {
        accepted,
        rejected,
        truncation_sizes: (n, m),
    })
}
