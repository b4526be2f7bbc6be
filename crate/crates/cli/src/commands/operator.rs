//! Commands acting on one configured operator.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;
use spectool_core::determinant::{growth_bound_margins, perturbation_determinant, section_change};
use spectool_core::disk::dist_to_segment;
use spectool_core::jacobi::certified_point_spectrum;
use spectool_core::linalg::{eig as eig_dense, EigOptions};

use super::{pair, pool, CommandResult};
use crate::config::Params;
use crate::output::{Artifacts, Cell, PlotData, Table};
use crate::{Assertion, CliError};

/// Margin tolerance for the growth bounds.
const MARGIN_TOL: f64 = 1e-12;

fn sort_complex(v: &mut [Complex64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

pub fn eig(params: &Params) -> CommandResult {
    let n = params.n;
    let m = params.operator.truncate(n)?;
    let result = eig_dense(&m, &EigOptions::for_dim(n))?;
    let mut values = result.values.clone();
    sort_complex(&mut values);

    let sum: Complex64 = values.iter().sum();
    let trace_error = (sum - m.trace()).norm();
    let scale = m.frobenius_norm().max(1.0);

    let mut table = Table::new("eigenvalues.csv", &["re", "im", "dist_to_segment"]);
    for z in &values {
        table.push(vec![z.re.into(), z.im.into(), dist_to_segment(*z).into()]);
    }
    let report = json!({
        "results": {
            "n": n,
            "iterations": result.iterations,
            "eigenvalues": values.iter().map(|&z| pair(z)).collect::<Vec<_>>(),
            "trace_error": trace_error,
        }
    });
    Ok((
        Artifacts {
            report,
            tables: vec![table],
            plots: vec![PlotData::new(
                "eigenvalues.dat",
                "re im",
                values.iter().map(|z| (z.re, z.im)).collect(),
            )],
        },
        vec![Assertion::new(
            "trace",
            trace_error <= 1e-8 * scale,
            format!("|sum of eigenvalues - trace| = {trace_error:e}"),
        )],
    ))
}

pub fn spectrum(params: &Params) -> CommandResult {
    let op = &params.operator;
    let s = certified_point_spectrum(op, &params.certify())?;
    let radius = 2.0 + op.perturbation_schatten_norm(f64::INFINITY)?;

    let mut accepted = Table::new(
        "spectrum.csv",
        &[
            "lambda_re",
            "lambda_im",
            "drift",
            "tail_mass",
            "multiplicity",
        ],
    );
    for e in &s.accepted {
        accepted.push(vec![
            e.lambda.re.into(),
            e.lambda.im.into(),
            e.drift.into(),
            e.tail_mass.into(),
            e.multiplicity.into(),
        ]);
    }
    let mut rejected = Table::new("rejected.csv", &["lambda_re", "lambda_im", "reason"]);
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &s.rejected {
        rejected.push(vec![
            r.lambda.re.into(),
            r.lambda.im.into(),
            r.reason.as_str().into(),
        ]);
        *counts.entry(r.reason.as_str()).or_default() += 1;
    }
    let outside = s
        .accepted
        .iter()
        .filter(|e| e.lambda.norm() > radius * (1.0 + 1e-12))
        .count();
    let report = json!({
        "results": {
            "accepted": s.accepted.iter().map(|e| json!({
                "lambda": pair(e.lambda),
                "drift": e.drift,
                "tail_mass": e.tail_mass,
                "multiplicity": e.multiplicity,
            })).collect::<Vec<_>>(),
            "rejected_counts": counts,
            "truncation_sizes": [s.truncation_sizes.0, s.truncation_sizes.1],
            "norm_disk_radius": radius,
        }
    });
    Ok((
        Artifacts {
            report,
            tables: vec![accepted, rejected],
            plots: vec![PlotData::new(
                "spectrum.dat",
                "re im",
                s.accepted
                    .iter()
                    .map(|e| (e.lambda.re, e.lambda.im))
                    .collect(),
            )],
        },
        vec![Assertion::new(
            "norm-disk",
            outside == 0,
            format!("{outside} accepted eigenvalues outside |lambda| <= {radius}"),
        )],
    ))
}

struct GridPoint {
    lambda: Complex64,
    z: Complex64,
    log_modulus: f64,
    margin: f64,
    f1_margin: Option<f64>,
    change: f64,
}

pub fn det(params: &Params) -> CommandResult {
    let op = &params.operator;
    let (p, n) = (params.p, params.n);
    let [ax, ay] = params.ellipse;
    let lambdas: Vec<Complex64> = (0..params.grid_points)
        .map(|k| {
            let t = std::f64::consts::TAU * (k as f64 + 0.5) / params.grid_points as f64;
            Complex64::new(ax * t.cos(), ay * t.sin())
        })
        .collect();
    let evaluate = |&lambda: &Complex64| -> Result<GridPoint, CliError> {
        let s = perturbation_determinant(op, lambda, p, n)?;
        let (margin, f1_margin) = growth_bound_margins(op, lambda, p, n)?;
        Ok(GridPoint {
            lambda,
            z: s.z,
            log_modulus: s.log_modulus,
            margin,
            f1_margin,
            change: section_change(op, lambda, p, n, params.delta_n)?,
        })
    };
    let points: Vec<GridPoint> = pool(params.workers)?
        .install(|| lambdas.par_iter().map(evaluate).collect::<Result<_, _>>())?;

    let mut table = Table::new(
        "det.csv",
        &[
            "lambda_re",
            "lambda_im",
            "z_re",
            "z_im",
            "p",
            "logmod",
            "margin",
        ],
    );
    let mut f1_table = Table::new(
        "det_f1.csv",
        &["lambda_re", "lambda_im", "z_re", "z_im", "f1_margin"],
    );
    for g in &points {
        table.push(vec![
            g.lambda.re.into(),
            g.lambda.im.into(),
            g.z.re.into(),
            g.z.im.into(),
            p.into(),
            g.log_modulus.into(),
            g.margin.into(),
        ]);
        if let Some(f) = g.f1_margin {
            f1_table.push(vec![
                g.lambda.re.into(),
                g.lambda.im.into(),
                g.z.re.into(),
                g.z.im.into(),
                Cell::from(f),
            ]);
        }
    }

    // log-modulus along a ray from just outside the segment towards infinity
    let dir = Complex64::from_polar(1.0, params.ray_angle);
    let (r0, r1) = (2.5f64, 1e3f64);
    let ray: Vec<(f64, f64)> = (0..params.ray_points)
        .map(|k| {
            let r = r0 * (r1 / r0).powf(k as f64 / (params.ray_points - 1) as f64);
            perturbation_determinant(op, dir * r, p, n).map(|s| (r, s.log_modulus))
        })
        .collect::<Result<_, _>>()?;

    let worst = points
        .iter()
        .map(|g| g.margin)
        .fold(f64::NEG_INFINITY, f64::max);
    let worst_f1 = points
        .iter()
        .filter_map(|g| g.f1_margin)
        .fold(f64::NEG_INFINITY, f64::max);
    let unstable = points.iter().filter(|g| !(g.change < 1e-6)).count();
    let mut assertions = vec![Assertion::new(
        "det-bound",
        worst <= MARGIN_TOL,
        format!("largest det_p bound margin {worst:e}"),
    )];
    if params.check_f1 && p == 1 {
        assertions.push(Assertion::new(
            "f1-bound",
            worst_f1 <= MARGIN_TOL,
            format!("largest f_1 bound margin {worst_f1:e}"),
        ));
    }
    let report = json!({
        "results": {
            "grid_points": points.len(),
            "max_margin": worst,
            "max_f1_margin": (p == 1).then_some(worst_f1),
            "max_section_change": points.iter().map(|g| g.change).fold(0.0, f64::max),
            "unstabilised_points": unstable,
            "ray_log_modulus": ray.iter().map(|&(r, l)| json!([r, l])).collect::<Vec<_>>(),
        }
    });
    let mut tables = vec![table];
    if p == 1 {
        tables.push(f1_table);
    }
    Ok((
        Artifacts {
            report,
            tables,
            plots: vec![PlotData::new("det_ray.dat", "abs_lambda log_modulus", ray)],
        },
        assertions,
    ))
}
