//! Randomized invariant suites over the bounds, quadrature and elliptic
//! engines. Sample sets are reproducible from a seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{check_sandwich, relative_error, relative_error_bounds, SANDWICH_SLACK};
use crate::carlson::{rf, rj};
use crate::elliptic::{period_elliptic, quartic_coefficients, quartic_roots, DEFAULT_CARLSON_TOL};
use crate::error::{Error, Result};
use crate::model::{Oscillation, StringParams};
use crate::quadrature::{exact_period, QuadratureConfig};

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Tolerance for quadrature/elliptic agreement.
pub const CROSS_METHOD_TOL: f64 = 1e-9;

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..=hi.ln())).exp()
}

/// Draws `n` oscillations with log-uniform `L/L0 in [1.01, 10]`,
/// `y0/L in [1e-4, 3]`, `sigma/m in [1e-2, 1e2]` and `L0, m in [0.1, 10]`.
pub fn sample_oscillations(n: usize, seed: u64) -> Vec<Oscillation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let l0 = log_uniform(&mut rng, 0.1, 10.0);
            let l = l0 * log_uniform(&mut rng, 1.01, 10.0);
            let mass = log_uniform(&mut rng, 0.1, 10.0);
            let sigma = mass * log_uniform(&mut rng, 1e-2, 1e2);
            let y0 = l * log_uniform(&mut rng, 1e-4, 3.0);
            let params = StringParams::new(l0, l, sigma, mass).expect("sampled params are valid");
            Oscillation::new(params, y0).expect("finite amplitude")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

/// Runs every randomized invariant on `samples` draws from `seed`.
///
/// Engine failures abort with the engine's error; invariant violations are
/// collected in the report.
pub fn run_suite(samples: usize, seed: u64) -> Result<VerifyReport> {
    if samples == 0 {
        return Err(Error::InvalidParams("samples must be at least 1".into()));
    }
    let quad = QuadratureConfig::default();
    let mut sandwich = CheckResult::new("sandwich lower <= P <= upper");
    let mut strict = CheckResult::new("strict P < upper for y0 > 0");
    let mut cross = CheckResult::new("quadrature vs elliptic");
    let mut corollary = CheckResult::new("relative-error bracket");
    let mut quartic = CheckResult::new("quartic roots vs coefficients");
    let mut homogeneity = CheckResult::new("Carlson homogeneity");

    for osc in sample_oscillations(samples, seed) {
        let tag = || {
            let p = &osc.params;
            format!(
                "L0={} L={} sigma={} m={} y0={}",
                p.l0(),
                p.l(),
                p.sigma(),
                p.mass(),
                osc.y0()
            )
        };
        let pq = exact_period(&osc, &quad)?;
        let report = check_sandwich(&osc, &pq);
        sandwich.record(report.lower_ok && report.upper_ok, || {
            format!("{}: {}", tag(), report.failures().join("; "))
        });
        strict.record(report.strict_upper_ok.unwrap_or(true), || {
            format!(
                "{}: P = {:e}, upper = {:e}",
                tag(),
                report.period,
                report.upper
            )
        });

        let pe = period_elliptic(&osc, DEFAULT_CARLSON_TOL)?;
        let diff = ((pe.value - pq.value) / pq.value).abs();
        cross.record(diff < CROSS_METHOD_TOL, || {
            format!("{}: relative difference {diff:e}", tag())
        });

        let r = relative_error(&osc.params, pq.value);
        let (low, high) = relative_error_bounds(&osc);
        corollary.record(
            low - SANDWICH_SLACK <= r && r <= high + SANDWICH_SLACK,
            || format!("{}: R = {r:e} outside [{low:e}, {high:e}]", tag()),
        );

        let roots = quartic_roots(&osc);
        let coeffs = quartic_coefficients(&osc);
        let scale = osc.z0().max(osc.params.l0());
        let mut worst = ((roots.sum() - 2.0 * osc.params.l0()) / scale).abs();
        for i in 0..16 {
            let z = scale * (-2.0 + 0.25 * i as f64);
            let horner = coeffs.iter().fold(0.0, |acc, c| acc * z + c);
            let mag = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (c * z.powi(4 - k as i32)).abs())
                .sum::<f64>();
            worst = worst.max((roots.eval(z) - horner).abs() / mag);
        }
        quartic.record(worst < 1e-12, || format!("{}: mismatch {worst:e}", tag()));

        let (x, y, z, p) = (
            osc.params.l0(),
            osc.params.l(),
            osc.z0(),
            osc.y0() + osc.params.l0(),
        );
        let k = osc.params.sigma() / osc.params.mass();
        let tol = DEFAULT_CARLSON_TOL;
        let f_ratio = rf(k * x, k * y, k * z, tol)? * k.sqrt() / rf(x, y, z, tol)?;
        let j_ratio = rj(k * x, k * y, k * z, k * p, tol)? * k.powf(1.5) / rj(x, y, z, p, tol)?;
        let dev = (f_ratio - 1.0).abs().max((j_ratio - 1.0).abs());
        homogeneity.record(dev < 1e-12, || format!("k={k}: deviation {dev:e}"));
    }

    Ok(VerifyReport {
        samples,
        seed,
        checks: vec![sandwich, strict, cross, corollary, quartic, homogeneity],
    })
}
