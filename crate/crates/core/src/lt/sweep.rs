use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{lt_sum, theorem3_sides};
use crate::error::{invalid, Result};
use crate::jacobi::{
    certified_point_spectrum, ensemble_sample, CertifyOptions, EnsembleParams, JacobiOperator,
};

/// Slack allowed on the explicit-constant inequalities.
const T3_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InequalityId {
    /// Real-part sum against the `c_p`, exponent `p + 1/2` bound.
    T3a,
    /// Real-part sum against the `3^{p−1}`, exponent `p` bound.
    T3b,
    /// `p = 1` distance sum against `‖J − J_0‖_1`.
    E8,
    /// `p ≥ 2` distance sum against `‖J − J_0‖_p^p`.
    E81,
}

impl InequalityId {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::T3a => "t3a",
            Self::T3b => "t3b",
            Self::E8 => "e8",
            Self::E81 => "e81",
        }
    }

    pub fn has_explicit_constant(self) -> bool {
        matches!(self, Self::T3a | Self::T3b)
    }
}

/// One inequality evaluated on one operator. For `t3a`/`t3b`, `rhs` is the
/// full right-hand side; for `e8`/`e81` it is the norm term without the
/// unspecified constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LTReport {
    pub id: InequalityId,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`, with `0/0` reported as 0.
    pub ratio: f64,
    pub p: u32,
    pub eps: f64,
    pub index: u64,
    pub seed: u64,
    pub scale: f64,
}

impl LTReport {
    pub fn violated(&self) -> bool {
        self.id.has_explicit_constant() && self.lhs > self.rhs + T3_SLACK
    }
}

fn ratio(lhs: f64, rhs: f64) -> f64 {
    if lhs == 0.0 {
        0.0
    } else {
        lhs / rhs
    }
}

/// Reports for one operator with known point spectrum: `e8` (`p = 1`) or
/// `e81` (`p ≥ 2`), then `t3a` and `t3b`. The index, seed and scale fields
/// are left at zero/one for the caller to fill.
pub fn lt_reports(
    j: &JacobiOperator,
    spectrum: &[(Complex64, usize)],
    p: u32,
    eps: f64,
) -> Result<Vec<LTReport>> {
    let lhs = lt_sum(spectrum, p, eps)?;
    let norm = j.perturbation_schatten_norm(p as f64)?.powi(p as i32);
    let t3 = theorem3_sides(j, spectrum, p)?;
    let make = |id, lhs, rhs| LTReport {
        id,
        lhs,
        rhs,
        ratio: ratio(lhs, rhs),
        p,
        eps,
        index: 0,
        seed: 0,
        scale: 1.0,
    };
    let lt_id = if p == 1 {
        InequalityId::E8
    } else {
        InequalityId::E81
    };
    Ok(vec![
        make(lt_id, lhs, norm),
        make(InequalityId::T3a, t3.lhs, t3.rhs_a),
        make(InequalityId::T3b, t3.lhs, t3.rhs_b),
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub params: EnsembleParams,
    pub count: usize,
    pub p: u32,
    pub eps: f64,
    /// Each draw is also evaluated as `J_0 + s (J − J_0)` for every `s`.
    pub scales: Vec<f64>,
    pub certify: CertifyOptions,
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            params: EnsembleParams::default(),
            count: 100,
            p: 1,
            eps: 0.1,
            scales: vec![1.0],
            certify: CertifyOptions::default(),
            workers: 1,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.count < 1 {
            return Err(invalid("count", "must be at least 1"));
        }
        if self.p < 1 {
            return Err(invalid("p", "must be a positive integer"));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(invalid("eps", "must be positive"));
        }
        if self.scales.is_empty() || self.scales.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
            return Err(invalid(
                "scales",
                "must be a nonempty list of positive numbers",
            ));
        }
        if self.workers < 1 {
            return Err(invalid("workers", "must be at least 1"));
        }
        self.certify.validate(self.params.support)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DrawFailure {
    pub index: u64,
    pub scale: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleRow {
    pub scale: f64,
    /// Extremes of the `e8`/`e81` ratios.
    pub max_ratio: f64,
    pub min_ratio: f64,
    pub max_t3a_ratio: f64,
    pub max_t3b_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    /// Operators evaluated: draws times scales.
    pub count: usize,
    pub max_ratio: f64,
    pub min_ratio: f64,
    /// `t3a`/`t3b` reports with `lhs > rhs`.
    pub violations: usize,
    pub per_scale: Vec<ScaleRow>,
    pub failures: Vec<DrawFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub summary: SweepSummary,
    /// Reports in `(scale, index, id)` order.
    pub reports: Vec<LTReport>,
}

fn evaluate(
    cfg: &SweepConfig,
    scale: f64,
    index: u64,
) -> std::result::Result<Vec<LTReport>, DrawFailure> {
    let run = || -> Result<Vec<LTReport>> {
        let j = ensemble_sample(&cfg.params, index)?.scaled(scale);
        let spectrum = certified_point_spectrum(&j, &cfg.certify)?;
        let mut reports = lt_reports(&j, &spectrum.multiset(), cfg.p, cfg.eps)?;
        for r in &mut reports {
            r.index = index;
            r.seed = cfg.params.seed;
            r.scale = scale;
        }
        Ok(reports)
    };
    run().map_err(|e| DrawFailure {
        index,
        scale,
        message: e.to_string(),
    })
}

fn extremes<'a>(reports: impl Iterator<Item = &'a LTReport>) -> (f64, f64) {
    reports.fold((f64::NEG_INFINITY, f64::INFINITY), |(hi, lo), r| {
        (hi.max(r.ratio), lo.min(r.ratio))
    })
}

/// Certifies the spectrum of every draw at every scale and evaluates the
/// inequalities. Results do not depend on `workers`.
pub fn ratio_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let tasks: Vec<(f64, u64)> = cfg
        .scales
        .iter()
        .flat_map(|&s| (0..cfg.count as u64).map(move |i| (s, i)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| invalid("workers", e.to_string()))?;
    let outcomes: Vec<_> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(s, i)| evaluate(cfg, s, i))
            .collect()
    });

    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for o in outcomes {
        match o {
            Ok(r) => reports.extend(r),
            Err(f) => failures.push(f),
        }
    }
    let is_lt = |r: &&LTReport| !r.id.has_explicit_constant();
    let per_scale = cfg
        .scales
        .iter()
        .map(|&scale| {
            let at = || reports.iter().filter(move |r| r.scale == scale);
            let (max_ratio, min_ratio) = extremes(at().filter(is_lt));
            let max_of = |id| extremes(at().filter(|r| r.id == id)).0;
            ScaleRow {
                scale,
                max_ratio,
                min_ratio,
                max_t3a_ratio: max_of(InequalityId::T3a),
                max_t3b_ratio: max_of(InequalityId::T3b),
            }
        })
        .collect();
    let (max_ratio, min_ratio) = extremes(reports.iter().filter(is_lt));
    Ok(SweepResult {
        summary: SweepSummary {
            count: tasks.len(),
            max_ratio,
            min_ratio,
            violations: reports.iter().filter(|r| r.violated()).count(),
            per_scale,
            failures,
        },
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(workers: usize) -> SweepConfig {
        SweepConfig {
            params: EnsembleParams {
                support: 4,
                scale: 1.5,
                decay: 0.8,
                seed: 11,
            },
            count: 6,
            scales: vec![0.5, 1.0],
            certify: CertifyOptions {
                n: 64,
                delta_n: 16,
                ..Default::default()
            },
            workers,
            ..Default::default()
        }
    }

    #[test]
    fn rank_one_ratio() {
        let j = JacobiOperator::rank_one(Complex64::new(2.0, 0.0));
        let r = lt_reports(&j, &[(Complex64::new(2.5, 0.0), 1)], 1, 0.1).unwrap();
        assert_eq!(r[0].id, InequalityId::E8);
        assert!((r[0].ratio - 0.5 / 2.25f64.powf(0.45) / 2.0).abs() < 1e-15);
        assert!((r[0].ratio - 0.173563).abs() < 1e-6);
        assert!(!r[1].violated() && !r[2].violated());
    }

    #[test]
    fn zero_scale_gives_zero_ratios() {
        let mut cfg = small(1);
        cfg.params.scale = 0.0;
        let out = ratio_sweep(&cfg).unwrap();
        assert!(out.summary.failures.is_empty());
        assert!(out.reports.iter().all(|r| r.lhs == 0.0 && r.ratio == 0.0));
        assert_eq!(out.summary.max_ratio, 0.0);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let a = ratio_sweep(&small(1)).unwrap();
        let b = ratio_sweep(&small(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.summary.count, 12);
        assert_eq!(a.reports.len(), 36);
        assert_eq!(a.summary.violations, 0);
        assert!(a.summary.max_ratio.is_finite());
    }

    #[test]
    fn invalid_configs() {
        let mut cfg = small(1);
        cfg.scales = vec![];
        assert!(ratio_sweep(&cfg).is_err());
        let mut cfg = small(1);
        cfg.eps = 0.0;
        assert!(ratio_sweep(&cfg).is_err());
    }
}
