mod common;

use common::{numeric_real_roots, simpson_richardson_period};
use proptest::prelude::*;
use ssp_core::bounds::{lower_bound_corrected, relative_error, relative_error_bounds, upper_bound};
use ssp_core::carlson::{rf, rj};
use ssp_core::elliptic::{
    period_elliptic, quartic_coefficients, quartic_roots, DEFAULT_CARLSON_TOL,
};
use ssp_core::integrate::integrate_fixed;
use ssp_core::model::{rayleigh_period, Oscillation, StringParams};
use ssp_core::quadrature::{exact_period, radicand_g, QuadratureConfig};

/// Simpson-Richardson on 10^6 panels, reference instance. Computed before
/// the engines existed (numpy, same construction as the test oracle).
const REFERENCE_PERIOD: f64 = 9.005_336_275_721_714;

fn osc(l0: f64, l: f64, sigma: f64, m: f64, y0: f64) -> Oscillation {
    Oscillation::new(StringParams::new(l0, l, sigma, m).unwrap(), y0).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn quad(o: &Oscillation) -> f64 {
    exact_period(o, &QuadratureConfig::default()).unwrap().value
}

#[test]
fn oracle_reproduces_frozen_value() {
    let o = osc(1.0, 1.25, 1.0, 1.0, 0.5);
    assert!(rel(simpson_richardson_period(&o, 1_000_000), REFERENCE_PERIOD) < 1e-13);
}

#[test]
fn reference_period_all_static_engines() {
    let o = osc(1.0, 1.25, 1.0, 1.0, 0.5);
    let q = exact_period(&o, &QuadratureConfig::default()).unwrap();
    assert!(rel(q.value, REFERENCE_PERIOD) < 1e-10);
    assert!(q.value > lower_bound_corrected(&o) && q.value < upper_bound(&o.params));
    assert!(q.err_estimate >= 0.0 && q.err_estimate < 1e-9);
    let e = period_elliptic(&o, DEFAULT_CARLSON_TOL).unwrap();
    assert!(rel(e.value, REFERENCE_PERIOD) < 1e-10);
}

#[test]
fn tiny_amplitude_limits() {
    let o = osc(1.0, 1.25, 1.0, 1.0, 1e-8 * 1.25);
    assert!(rel(quad(&o), rayleigh_period(&o.params)) < 1e-12);
    let o = osc(1.0, 1.25, 1.0, 1.0, 1e-3 * 1.25);
    let e = period_elliptic(&o, DEFAULT_CARLSON_TOL).unwrap().value;
    assert!(rel(e, rayleigh_period(&o.params)) < 1e-5);
}

#[test]
fn period_decreases_with_amplitude() {
    let mut prev = f64::INFINITY;
    for i in 1..=10 {
        let o = osc(1.0, 1.25, 1.0, 1.0, 0.125 * i as f64);
        let p = quad(&o);
        let oracle = simpson_richardson_period(&o, 20_000);
        assert!(rel(p, oracle) < 1e-10);
        assert!(p < prev);
        prev = p;
    }
}

#[test]
fn integrand_is_bounded_and_converges_fast() {
    let o = osc(1.0, 1.05, 1.0, 1.0, 2.0);
    let f = |t: f64| 1.0 / radicand_g(&o, o.y0() * t.sin()).sqrt();
    let vals: Vec<f64> = (0..=1000)
        .map(|i| f(std::f64::consts::FRAC_PI_2 * i as f64 / 1000.0))
        .collect();
    let (lo, hi) = vals
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), v| (a.min(*v), b.max(*v)));
    assert!(lo > 0.0 && hi.is_finite() && hi / lo < 1e3);

    // fixed-rule error under panel doubling falls at least like h^4
    let exact =
        ssp_core::integrate::integrate_adaptive(&f, 0.0, std::f64::consts::FRAC_PI_2, 1e-15, 40)
            .unwrap()
            .value;
    let errs: Vec<f64> = [1usize, 2, 4]
        .iter()
        .map(|&n| (integrate_fixed(&f, 0.0, std::f64::consts::FRAC_PI_2, n) - exact).abs())
        .collect();
    for w in errs.windows(2) {
        assert!(w[1] <= w[0] / 16.0 || w[1] < 1e-14 * exact, "{errs:?}");
    }
}

#[test]
fn truncated_direct_form_converges_to_theta_form() {
    let o = osc(1.0, 1.25, 1.0, 1.0, 0.5);
    let y0 = o.y0();
    let prefactor = 4.0 * (0.5f64).sqrt();
    let theta_form = quad(&o);
    let theta_f = |t: f64| 1.0 / radicand_g(&o, y0 * t.sin()).sqrt();
    let mut last_gap = f64::INFINITY;
    for &d in &[1e-1, 1e-2, 1e-3, 1e-4] {
        let top = y0 * (1.0 - d);
        let direct = |y: f64| 1.0 / ((y0 * y0 - y * y).sqrt() * radicand_g(&o, y).sqrt());
        let head = ssp_core::integrate::integrate_adaptive(&direct, 0.0, top, 1e-12, 40)
            .unwrap()
            .value;
        let tail = ssp_core::integrate::integrate_adaptive(
            &theta_f,
            (1.0 - d).asin(),
            std::f64::consts::FRAC_PI_2,
            1e-12,
            40,
        )
        .unwrap()
        .value;
        assert!(
            rel(prefactor * (head + tail), theta_form) < 1e-10,
            "d = {d}"
        );
        let gap = (theta_form - prefactor * head).abs() / theta_form;
        assert!(gap < last_gap);
        last_gap = gap;
    }
    // the missing tail shrinks like sqrt(2 d)
    assert!(last_gap < 1e-2);
}

#[test]
fn elliptic_matches_quadrature_on_grid() {
    for &ratio in &[1.05, 1.25, 1.5, 2.0, 4.0] {
        for &amp in &[0.05, 0.2, 0.5, 1.0, 2.0] {
            for &sm in &[0.1, 1.0, 10.0] {
                let o = osc(1.0, ratio, sm, 1.0, amp * ratio);
                let q = quad(&o);
                let e = period_elliptic(&o, DEFAULT_CARLSON_TOL).unwrap().value;
                assert!(
                    rel(e, q) < 1e-9,
                    "L={ratio} y0/L={amp} s/m={sm}: {e} vs {q}"
                );
            }
        }
    }
}

#[test]
fn numeric_roots_match_closed_form() {
    let o = osc(1.0, 1.25, 1.0, 1.0, 0.5);
    let numeric = numeric_real_roots(&quartic_coefficients(&o));
    for (a, b) in numeric.iter().zip(quartic_roots(&o).roots) {
        assert!((a - b).abs() < 1e-12 * 1.25, "{numeric:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sandwich_holds(
        ratio in 1.01f64..10.0,
        amp in 1e-4f64..3.0,
        sm in 1e-2f64..1e2,
    ) {
        let o = osc(1.0, ratio, sm, 1.0, amp * ratio);
        let p = quad(&o);
        let upper = upper_bound(&o.params);
        prop_assert!(p <= upper * (1.0 + 1e-9));
        prop_assert!(p < upper);
        prop_assert!(p >= lower_bound_corrected(&o) * (1.0 - 1e-9));
        let r = relative_error(&o.params, p);
        let (low, high) = relative_error_bounds(&o);
        prop_assert!(low - 1e-9 <= r && r <= high + 1e-9);
    }

    #[test]
    fn only_sigma_over_mass_matters(c in 1e-3f64..1e3, amp in 0.01f64..2.0) {
        let a = osc(1.0, 1.5, 2.0, 3.0, amp);
        let b = osc(1.0, 1.5, 2.0 * c, 3.0 * c, amp);
        prop_assert!(rel(quad(&a), quad(&b)) < 1e-12);
        let ea = period_elliptic(&a, DEFAULT_CARLSON_TOL).unwrap().value;
        let eb = period_elliptic(&b, DEFAULT_CARLSON_TOL).unwrap().value;
        prop_assert!(rel(ea, eb) < 1e-12);
    }

    #[test]
    fn carlson_homogeneity(
        x in 0.0f64..10.0, y in 0.01f64..10.0, z in 0.01f64..10.0, p in 0.01f64..10.0, k in 1e-3f64..1e3,
    ) {
        let t = DEFAULT_CARLSON_TOL;
        let f = rf(k * x, k * y, k * z, t).unwrap() * k.sqrt();
        prop_assert!(rel(f, rf(x, y, z, t).unwrap()) < 1e-12);
        let j = rj(k * x, k * y, k * z, k * p, t).unwrap() * k.powf(1.5);
        prop_assert!(rel(j, rj(x, y, z, p, t).unwrap()) < 1e-12);
    }

    #[test]
    fn roots_reproduce_radicand(ratio in 1.01f64..10.0, amp in 0.01f64..3.0, z in -20.0f64..20.0) {
        let o = osc(1.0, ratio, 1.0, 1.0, amp * ratio);
        let roots = quartic_roots(&o);
        let f = ssp_core::elliptic::quartic_radicand(&o, z);
        let scale = z.powi(4).abs() + (ratio + o.z0()).powi(4);
        prop_assert!((roots.eval(z) - f).abs() < 1e-12 * scale);
        prop_assert!((roots.sum() - 2.0).abs() < 1e-12 * (ratio + o.z0()));
    }
}
