mod common;

use std::f64::consts::PI;

use common::*;
use proptest::prelude::*;
use spectool_core::disk::{
    blaschke_factor, circle_log_integral, dist_to_segment, elementary_ratio_bounds,
    harmonic_measure_arc, inverse_joukowski, joukowski, lemma1_margin, outer_modulus,
    weighted_zero_sum, BoundarySet, WeightSpec, ZeroSet,
};
use spectool_core::Complex64;

fn disk_point(max_r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max_r, 0.0..2.0 * PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn joukowski_round_trip(r in 1e-3..(1.0 - 1e-6), t in 0.0..2.0 * PI) {
        let z = Complex64::from_polar(r, t);
        let lambda = joukowski(z).unwrap();
        prop_assume!(dist_to_segment(lambda) > 1e-9);
        prop_assert!((inverse_joukowski(lambda).unwrap() - z).norm() < 1e-10);
    }

    #[test]
    fn unit_circle_maps_to_segment(t in 0.0..2.0 * PI) {
        let lambda = joukowski(Complex64::from_polar(1.0, t)).unwrap();
        prop_assert!((lambda - c(2.0 * t.cos(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn near_arc_measure_is_at_least_a_quarter(gamma in 1e-4..0.5, s in 0.0..1.0, phi in 0.0..2.0 * PI) {
        let z = c(1.0, 0.0) - Complex64::from_polar(gamma * s, phi);
        prop_assume!(z.norm() < 1.0);
        prop_assert!(harmonic_measure_arc(z, gamma).unwrap() >= 0.25);
    }

    #[test]
    fn outer_modulus_between_one_and_e(z in disk_point(1.0 - 1e-9), gamma in 1e-4..1.0) {
        let g = outer_modulus(z, gamma).unwrap();
        prop_assert!((1.0..=std::f64::consts::E).contains(&g));
    }

    #[test]
    fn elementary_ratios_are_ordered(z in disk_point(1.0), phi in 0.0..2.0 * PI, tau in 0.0..1.0) {
        let (a, b, c3) = elementary_ratio_bounds(z, Complex64::from_polar(1.0, phi), tau).unwrap();
        prop_assert!(a <= b * (1.0 + 1e-12) && b <= c3 * (1.0 + 1e-12) && c3 < 2.0);
    }

    #[test]
    fn lemma1_holds(n in 1usize..=3, gsel in 0.0..1.0f64, phi in 0.0..2.0 * PI, lr in 0.0..1.0f64, lt in 0.0..2.0 * PI) {
        let gmax = 1e-2f64.min(0.99 / (200.0 * n as f64));
        let gamma = 1e-3 + (gmax - 1e-3) * gsel;
        let z = c(1.0, 0.0) - Complex64::from_polar(gamma, phi);
        prop_assume!(z.norm() < 1.0);
        let lambda = Complex64::from_polar(lr, lt);
        prop_assume!(lr > 0.0 && (c(1.0, 0.0) - lambda).norm() >= 200.0 * n as f64 * gamma);
        let z = c(1.0, 0.0) - (c(1.0, 0.0) - z) * (gamma / (c(1.0, 0.0) - z).norm());
        prop_assert!(lemma1_margin(lambda, z, gamma, n).unwrap() <= 0.0);
    }

    #[test]
    fn jensen_formula(zs in prop::collection::vec(disk_point(0.85), 1..=6), r in 0.86..0.99) {
        prop_assume!(zs.iter().all(|z| z.norm() > 1e-3));
        let f = |w: Complex64| zs.iter().map(|&a| blaschke_factor(w, a).unwrap()).product();
        let mean = circle_log_integral(f, r, 4096).unwrap();
        let expect: f64 = zs.iter().map(|a| (r / a.norm()).ln() + a.norm().ln()).sum();
        prop_assert!((mean - expect).abs() < 1e-6);
    }

    #[test]
    fn weighted_sum_is_additive(
        xs in prop::collection::vec(disk_point(0.99), 0..6),
        ys in prop::collection::vec(disk_point(0.99), 0..6),
        a in 0.0..3.0,
        r in prop::collection::vec(0.0..2.0f64, 2),
    ) {
        let e = BoundarySet::from_angles(&[0.0, 2.0]).unwrap();
        let w = WeightSpec::new(a, r).unwrap();
        let x = ZeroSet::simple(&xs).unwrap();
        let y = ZeroSet::simple(&ys).unwrap();
        let sum = weighted_zero_sum(&x, &e, &w).unwrap() + weighted_zero_sum(&y, &e, &w).unwrap();
        let joint = weighted_zero_sum(&x.concat(&y), &e, &w).unwrap();
        prop_assert!((sum - joint).abs() <= 1e-15 * joint.max(1.0));
    }
}

#[test]
fn harmonic_measure_at_origin_bounds() {
    for k in 1..=4 {
        let gamma = 10f64.powi(-k);
        let w = harmonic_measure_arc(c(0.0, 0.0), gamma).unwrap();
        assert!(gamma / PI <= w && w <= gamma / 2.0, "gamma={gamma}");
    }
}

#[test]
fn joukowski_examples() {
    assert_eq!(joukowski(c(0.5, 0.0)).unwrap(), c(2.5, 0.0));
    assert!(
        (joukowski(Complex64::from_polar(1.0, PI / 3.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15
    );
    let z = c(0.0, 1.0 - 2f64.sqrt());
    assert!((joukowski(z).unwrap() - c(0.0, 2.0)).norm() < 1e-14);
    assert!((inverse_joukowski(c(0.0, 2.0)).unwrap() - z).norm() < 1e-15);
}
