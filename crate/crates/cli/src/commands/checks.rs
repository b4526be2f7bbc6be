//! Sampled checks of the function-theory estimates.

use std::f64::consts::{E, PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use spectool_core::disk::{
    arc_half_angle, blaschke_factor, circle_log_integral, dist_to_segment, elementary_ratio_bounds,
    harmonic_measure_arc, inverse_joukowski, joukowski, lemma1_margin, outer_modulus,
    LEMMA1_SEPARATION,
};
use spectool_core::lt::lemma3_ratio_scan;

use super::{stream, CommandResult};
use crate::config::Params;
use crate::output::{Artifacts, Table};
use crate::Assertion;

/// Relative slack for the ordered-triple comparisons.
const ORDER_SLACK: f64 = 1e-12;
/// Accepted range of every annulus comparison ratio.
pub const LEMMA3_RANGE: (f64, f64) = (0.1, 10.0);
/// Tolerance of the quadrature against the closed form.
pub const JENSEN_TOL: f64 = 1e-6;

/// Uniform point of the disk of radius `r`.
fn disk_point(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::from_polar(r * rng.random::<f64>().sqrt(), TAU * rng.random::<f64>())
}

/// Pass/fail tally of one sampled check.
#[derive(Default)]
struct Tally {
    checked: usize,
    failed: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        self.failed += usize::from(!ok);
    }

    fn json(&self) -> serde_json::Value {
        json!({ "checked": self.checked, "passed": self.checked - self.failed, "failed": self.failed })
    }

    fn assertion(&self, id: &str) -> Assertion {
        Assertion::new(
            id,
            self.failed == 0 && self.checked > 0,
            format!("{} of {} samples failed", self.failed, self.checked),
        )
    }
}

/// Geometric grid of `k` values from `lo` to `hi`.
fn log_grid(lo: f64, hi: f64, k: usize) -> impl Iterator<Item = f64> {
    (0..k).map(move |i| lo * (hi / lo).powf(i as f64 / (k - 1) as f64))
}

pub fn disk_check(params: &Params) -> CommandResult {
    let mut rng = stream(params.seed, 1);
    let mut round_trip = Tally::default();
    let mut worst_round_trip = 0.0f64;
    for _ in 0..params.samples {
        let z = disk_point(&mut rng, 1.0 - 1e-6);
        if z.norm() < 1e-3 {
            continue;
        }
        let lambda = joukowski(z)?;
        if dist_to_segment(lambda) <= 1e-9 {
            continue;
        }
        let err = (inverse_joukowski(lambda)? - z).norm();
        worst_round_trip = worst_round_trip.max(err);
        round_trip.record(err < 1e-10);
    }

    let mut rng = stream(params.seed, 2);
    let mut outer = Tally::default();
    for _ in 0..params.samples {
        let z = disk_point(&mut rng, 1.0 - 1e-9);
        let gamma = 1e-4 + (1.0 - 1e-4) * rng.random::<f64>();
        let g = outer_modulus(z, gamma)?;
        outer.record((1.0..=E).contains(&g));
    }

    let mut deltas = vec![params.delta];
    deltas.extend([0.5, 0.7].into_iter().filter(|&d| d > params.delta));
    let mut table = Table::new("lemma3.csv", &["delta", "relation", "min", "max"]);
    let mut scans = Vec::new();
    for &d in &deltas {
        let brackets = lemma3_ratio_scan(d, params.grid)?;
        for b in &brackets {
            table.push(vec![
                d.into(),
                b.relation.into(),
                b.min.into(),
                b.max.into(),
            ]);
        }
        scans.push((d, brackets));
    }
    let (lo, hi) = LEMMA3_RANGE;
    let in_range = scans[0].1.iter().all(|b| b.min >= lo && b.max <= hi);
    let tightening = scans.windows(2).all(|w| {
        w[0].1
            .iter()
            .zip(&w[1].1)
            .all(|(a, b)| b.min >= a.min && b.max <= a.max)
    });

    let report = json!({
        "results": {
            "joukowski": round_trip.json(),
            "max_round_trip_error": worst_round_trip,
            "e205": outer.json(),
            "lemma3": scans.iter().map(|(d, b)| json!({ "delta": d, "brackets": b })).collect::<Vec<_>>(),
        }
    });
    Ok((
        Artifacts { report, tables: vec![table], plots: vec![] },
        vec![
            round_trip.assertion("joukowski"),
            outer.assertion("e205"),
            Assertion::new(
                "lemma3",
                in_range && tightening,
                format!("brackets within [{lo}, {hi}]: {in_range}; tightening over {deltas:?}: {tightening}"),
            ),
        ],
    ))
}

pub fn lemma_check(params: &Params) -> CommandResult {
    let one = Complex64::new(1.0, 0.0);

    // Blaschke factor against the harmonic-measure scale, hypotheses drawn
    // by rejection until `samples` admissible triples are found
    let mut rng = stream(params.seed, 3);
    let mut lemma1 = Tally::default();
    let mut worst_lemma1 = f64::NEG_INFINITY;
    let mut attempts = 0usize;
    while lemma1.checked < params.samples && attempts < 100 * params.samples {
        attempts += 1;
        let n = rng.random_range(1..=3usize);
        let gamma = 1e-3 + (1e-2 - 1e-3) * rng.random::<f64>();
        let phi = PI * (rng.random::<f64>() - 0.5);
        let lambda = disk_point(&mut rng, 1.0);
        let z = one - Complex64::from_polar(gamma, phi);
        if !(z.norm() < 1.0)
            || lambda.norm() == 0.0
            || (one - lambda).norm() < LEMMA1_SEPARATION * n as f64 * gamma
        {
            continue;
        }
        let m = lemma1_margin(lambda, z, gamma, n)?;
        worst_lemma1 = worst_lemma1.max(m);
        lemma1.record(m <= 0.0);
    }

    let mut rng = stream(params.seed, 4);
    let mut triple = Tally::default();
    for _ in 0..10 * params.samples {
        let z = disk_point(&mut rng, 1.0);
        if !(z.norm() < 1.0) {
            continue;
        }
        let zeta = Complex64::from_polar(1.0, TAU * rng.random::<f64>());
        let tau = rng.random::<f64>();
        let (a, b, c) = elementary_ratio_bounds(z, zeta, tau)?;
        triple.record(a <= b * (1.0 + ORDER_SLACK) && b <= c * (1.0 + ORDER_SLACK) && c < 2.0);
    }

    let mut at_origin = Tally::default();
    let mut table = Table::new(
        "harmonic_origin.csv",
        &["gamma", "omega0", "lower", "upper"],
    );
    for gamma in log_grid(1e-4, 1e-1, 64) {
        let w = harmonic_measure_arc(Complex64::new(0.0, 0.0), gamma)?;
        at_origin.record(gamma / PI <= w && w <= gamma / 2.0);
        table.push(vec![
            gamma.into(),
            w.into(),
            (gamma / PI).into(),
            (gamma / 2.0).into(),
        ]);
    }

    // points within γ of 1: 16 relative distances × 32 directions per γ
    let mut near_arc = Tally::default();
    let mut min_near = f64::INFINITY;
    for gamma in log_grid(1e-4, 0.5, 16) {
        arc_half_angle(gamma)?;
        for i in 1..=16 {
            for k in 0..32 {
                let s = i as f64 / 16.0;
                let phi = TAU * (k as f64 + 0.5) / 32.0;
                let z = one - Complex64::from_polar(gamma * s, phi);
                if !(z.norm() < 1.0) {
                    continue;
                }
                let w = harmonic_measure_arc(z, gamma)?;
                min_near = min_near.min(w);
                near_arc.record(w >= 0.25);
            }
        }
    }

    let report = json!({
        "results": {
            "lemma1": lemma1.json(),
            "lemma1_max_margin": worst_lemma1,
            "e226": triple.json(),
            "e202": at_origin.json(),
            "e203": near_arc.json(),
            "e203_min_measure": min_near,
        }
    });
    Ok((
        Artifacts {
            report,
            tables: vec![table],
            plots: vec![],
        },
        vec![
            lemma1.assertion("lemma1"),
            triple.assertion("e226"),
            at_origin.assertion("e202"),
            near_arc.assertion("e203"),
        ],
    ))
}

pub fn jensen_check(params: &Params) -> CommandResult {
    const RADIUS: f64 = 0.9;
    let mut rng = stream(params.seed, 5);
    let mut table = Table::new(
        "jensen.csv",
        &["index", "zeros", "integral", "expected", "error"],
    );
    let mut tally = Tally::default();
    let mut worst = 0.0f64;
    for index in 0..params.products {
        let k = rng.random_range(1..=6usize);
        let zeros: Vec<Complex64> = (0..k)
            .map(|_| loop {
                let a = disk_point(&mut rng, 0.85);
                if a.norm() > 1e-3 {
                    break a;
                }
            })
            .collect();
        let f = |w: Complex64| {
            zeros
                .iter()
                .map(|&a| blaschke_factor(w, a).expect("zeros lie inside the disk"))
                .product()
        };
        let integral = circle_log_integral(f, RADIUS, params.n_grid)?;
        // every zero lies inside the circle and |f(0)| = Π|a|, so the mean is k·ln r
        let expected = k as f64 * RADIUS.ln();
        let err = (integral - expected).abs();
        worst = worst.max(err);
        tally.record(err <= JENSEN_TOL);
        table.push(vec![
            index.into(),
            k.into(),
            integral.into(),
            expected.into(),
            err.into(),
        ]);
    }
    let report = json!({
        "results": { "jensen": tally.json(), "radius": RADIUS, "n_grid": params.n_grid, "max_error": worst }
    });
    Ok((
        Artifacts {
            report,
            tables: vec![table],
            plots: vec![],
        },
        vec![tally.assertion("jensen")],
    ))
}
