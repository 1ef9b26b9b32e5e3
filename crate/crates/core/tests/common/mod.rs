//! Test-only oracles, independent of the library's engines.
#![allow(dead_code)]

use num_complex::Complex64;
use ssp_core::model::Oscillation;

/// Exact period from composite Simpson on the theta-form integrand with
/// `panels` and `panels/2` intervals, Richardson-extrapolated.
///
/// The integrand is written out from the first integral directly instead of
/// calling the library's `radicand_g`.
pub fn simpson_richardson_period(osc: &Oscillation, panels: usize) -> f64 {
    let p = &osc.params;
    let (l0, l, y0) = (p.l0(), p.l(), osc.y0());
    let z0 = (l * l + y0 * y0).sqrt();
    let f = |theta: f64| {
        let y = y0 * theta.sin();
        1.0 / (1.0 / l0 - 2.0 / ((l * l + y * y).sqrt() + z0)).sqrt()
    };
    let simpson = |n: usize| {
        let h = std::f64::consts::FRAC_PI_2 / n as f64;
        let mut s = f(0.0) + f(std::f64::consts::FRAC_PI_2);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(h * i as f64);
        }
        s * h / 3.0
    };
    let fine = simpson(panels);
    let coarse = simpson(panels / 2);
    let integral = fine + (fine - coarse) / 15.0;
    4.0 * (p.mass() / (2.0 * p.sigma())).sqrt() * integral
}

/// Real roots of `sum c[k] z^(n-k)` by Aberth-Ehrlich iteration followed by
/// Newton polishing on the real polynomial. Returns roots sorted ascending.
pub fn numeric_real_roots(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[0];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let horner_c = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in &monic {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let radius = 1.0 + monic[1..].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64,
            )
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner_c(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-16 {
            break;
        }
    }
    let horner_r = |x: f64| {
        let (mut p, mut dp) = (0.0, 0.0);
        for &c in &monic {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    let mut roots: Vec<f64> = z
        .iter()
        .map(|r| {
            let mut x = r.re;
            for _ in 0..5 {
                let (p, dp) = horner_r(x);
                if dp == 0.0 {
                    break;
                }
                x -= p / dp;
            }
            x
        })
        .collect();
    roots.sort_by(f64::total_cmp);
    roots
}

/// Least-squares slope of `ln|ys|` against `ln xs`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
