//! Adaptive Gauss-Kronrod (7/15 point) quadrature for smooth integrands.

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Sum of the Kronrod/Gauss differences over accepted panels.
    pub abs_err: f64,
    /// Number of accepted panels.
    pub panels: usize,
}

/// One 15-point Kronrod estimate and its embedded 7-point Gauss estimate.
pub fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = half * XGK[j];
        let sum = f(center - x) + f(center + x);
        kronrod += WGK[j] * sum;
        // Gauss nodes sit at the odd Kronrod indices
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    (kronrod * half, gauss * half)
}

/// Composite 15-point Kronrod rule on `panels` equal subintervals.
pub fn integrate_fixed<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let lo = a + h * i as f64;
            gauss_kronrod_15(f, lo, lo + h).0
        })
        .sum()
}

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol` by recursive
/// bisection, refining at most `max_depth` levels.
///
/// The absolute target is `rel_tol` times a crude trapezoid estimate of the
/// integral magnitude, so control is purely relative.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_depth: u32,
) -> Result<Integral> {
    let crude = 0.5 * (b - a).abs() * (f(a).abs() + f(b).abs() + 2.0 * f(0.5 * (a + b)).abs());
    let abs_tol = (rel_tol * crude).max(f64::MIN_POSITIVE);
    let mut acc = Integral {
        value: 0.0,
        abs_err: 0.0,
        panels: 0,
    };
    let mut stack = vec![(a, b, abs_tol, 0u32)];
    while let Some((lo, hi, tol, depth)) = stack.pop() {
        let (k, g) = gauss_kronrod_15(f, lo, hi);
        let err = (k - g).abs();
        if !k.is_finite() {
            return Err(Error::ConvergenceFailure {
                method: "quadrature",
                detail: format!("non-finite integrand on [{lo}, {hi}]"),
            });
        }
        if err <= tol || err <= 50.0 * f64::EPSILON * k.abs() {
            acc.value += k;
            acc.abs_err += err;
            acc.panels += 1;
            continue;
        }
        if depth >= max_depth {
            return Err(Error::ConvergenceFailure {
                method: "quadrature",
                detail: format!("error {err:e} above {tol:e} after {max_depth} refinements"),
            });
        }
        let mid = 0.5 * (lo + hi);
        stack.push((mid, hi, 0.5 * tol, depth + 1));
        stack.push((lo, mid, 0.5 * tol, depth + 1));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn exact_for_polynomials() {
        let f = |x: f64| 3.0 * x.powi(8) - x.powi(3) + 2.0;
        let (k, g) = gauss_kronrod_15(&f, -1.0, 2.0);
        let exact = (512.0 + 1.0) / 3.0 - (16.0 - 1.0) / 4.0 + 6.0;
        assert!((k - exact).abs() < 1e-12 * exact);
        assert!((g - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn adaptive_reaches_tolerance() {
        let r = integrate_adaptive(&|x: f64| (10.0 * x).cos().exp(), 0.0, PI, 1e-13, 30).unwrap();
        // pi * I0(1), scipy.special.iv(0, 1)
        let exact = 1.266_065_877_752_008_4 * PI;
        assert!(((r.value - exact) / exact).abs() < 1e-12);
        assert!(r.panels > 1);
    }

    #[test]
    fn depth_cap_reports_failure() {
        let e = integrate_adaptive(&|x: f64| x.abs().sqrt(), -1.0, 0.7, 1e-14, 2);
        assert!(matches!(e, Err(Error::ConvergenceFailure { .. })));
    }

    #[test]
    fn deterministic() {
        let f = |x: f64| (x * x).sin();
        let a = integrate_adaptive(&f, 0.0, 3.0, 1e-12, 30).unwrap();
        let b = integrate_adaptive(&f, 0.0, 3.0, 1e-12, 30).unwrap();
        assert_eq!(a, b);
    }
}
