use serde_json::json;
use spectool_core::lt::{ratio_sweep, InequalityId};

use super::CommandResult;
use crate::config::Params;
use crate::output::{histogram, Artifacts, Table};
use crate::Assertion;

/// Regression tripwire on the empirical ratios of the inequalities whose
/// constant is not explicit.
pub const RATIO_TRIPWIRE: f64 = 100.0;

pub fn lt_sweep(params: &Params) -> CommandResult {
    let out = ratio_sweep(&params.sweep())?;
    let summary = &out.summary;

    let mut rows = Table::new(
        "lt_reports.csv",
        &[
            "id", "lhs", "rhs", "ratio", "p", "eps", "index", "seed", "scale",
        ],
    );
    for r in &out.reports {
        rows.push(vec![
            r.id.as_str().into(),
            r.lhs.into(),
            r.rhs.into(),
            r.ratio.into(),
            r.p.into(),
            r.eps.into(),
            r.index.into(),
            r.seed.into(),
            r.scale.into(),
        ]);
    }
    let mut scales = Table::new(
        "per_scale.csv",
        &[
            "scale",
            "max_ratio",
            "min_ratio",
            "max_t3a_ratio",
            "max_t3b_ratio",
        ],
    );
    for s in &summary.per_scale {
        scales.push(vec![
            s.scale.into(),
            s.max_ratio.into(),
            s.min_ratio.into(),
            s.max_t3a_ratio.into(),
            s.max_t3b_ratio.into(),
        ]);
    }
    let lt_id = if params.p == 1 {
        InequalityId::E8
    } else {
        InequalityId::E81
    };
    let ratios: Vec<f64> = out
        .reports
        .iter()
        .filter(|r| r.id == lt_id)
        .map(|r| r.ratio)
        .collect();

    let mut assertions = Vec::new();
    for id in [InequalityId::T3a, InequalityId::T3b] {
        let bad = out
            .reports
            .iter()
            .filter(|r| r.id == id && r.violated())
            .count();
        assertions.push(Assertion::new(
            id.as_str(),
            bad == 0,
            format!("{bad} violations"),
        ));
    }
    assertions.push(Assertion::new(
        lt_id.as_str(),
        summary.max_ratio.is_finite() && summary.max_ratio <= RATIO_TRIPWIRE,
        format!(
            "max ratio {:e} (tripwire {RATIO_TRIPWIRE})",
            summary.max_ratio
        ),
    ));

    let report = json!({ "results": summary });
    Ok((
        Artifacts {
            report,
            tables: vec![rows, scales],
            plots: vec![histogram(
                "ratio_hist.dat",
                &format!("{} ratios", lt_id.as_str()),
                &ratios,
            )],
        },
        assertions,
    ))
}
