//! A-priori bounds on the exact period.
//!
//! The Rayleigh period `2 pi / sqrt(2T/(mL))` is an upper bound. Freezing the
//! wire length at its turning-point value and using
//! `sqrt(L^2 + y0^2) <= L + y0^2/(2L)` gives the lower bound
//!
//! ```text
//! 2 pi / sqrt(2T/(mL) + sigma y0^2 / (m L0 L^2))
//! ```
//!
//! and, through `sqrt(1 + d) - 1 <= d/2`, the relative-error bracket
//! `-sigma y0^2 / (4 T L0 L) <= (P - P_rayleigh)/P <= 0`.
//!
//! The `*_printed` variants carry the widely quoted forms
//! `sigma y0^2 / (L L0)` and `-y0^2 m / (4 T L0)`. Those are not
//! dimensionless-consistent, so their truth depends on the unit system; they
//! are reported for comparison and never used as invariants.

use std::f64::consts::PI;

use crate::model::{rayleigh_period, Oscillation, StringParams};
use crate::quadrature::PeriodEstimate;

/// Relative slack applied by [`check_sandwich`].
pub const SANDWICH_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodBounds {
    pub upper: f64,
    pub lower_corrected: f64,
    pub lower_printed: f64,
    pub rel_error_bound_corrected: f64,
    pub rel_error_bound_printed: f64,
}

impl PeriodBounds {
    pub fn new(osc: &Oscillation) -> Self {
        Self {
            upper: upper_bound(&osc.params),
            lower_corrected: lower_bound_corrected(osc),
            lower_printed: lower_bound_printed(osc),
            rel_error_bound_corrected: relative_error_bounds(osc).0,
            rel_error_bound_printed: relative_error_bound_printed(osc),
        }
    }
}

pub fn upper_bound(params: &StringParams) -> f64 {
    rayleigh_period(params)
}

pub fn lower_bound_corrected(osc: &Oscillation) -> f64 {
    let p = &osc.params;
    let y0 = osc.y0();
    let extra = p.sigma() * y0 * y0 / (p.mass() * p.l0() * p.l() * p.l());
    2.0 * PI / (p.linear_omega_sq() + extra).sqrt()
}

pub fn lower_bound_printed(osc: &Oscillation) -> f64 {
    let p = &osc.params;
    let y0 = osc.y0();
    let extra = p.sigma() * y0 * y0 / (p.l() * p.l0());
    2.0 * PI / (p.linear_omega_sq() + extra).sqrt()
}

/// `(low, high)` bracket for `R = (P - P_rayleigh) / P`.
pub fn relative_error_bounds(osc: &Oscillation) -> (f64, f64) {
    let p = &osc.params;
    let y0 = osc.y0();
    let low = -p.sigma() * y0 * y0 / (4.0 * p.rest_tension() * p.l0() * p.l());
    (low, 0.0)
}

pub fn relative_error_bound_printed(osc: &Oscillation) -> f64 {
    let p = &osc.params;
    let y0 = osc.y0();
    -y0 * y0 * p.mass() / (4.0 * p.rest_tension() * p.l0())
}

/// Relative error of the Rayleigh approximation against `period`.
pub fn relative_error(params: &StringParams, period: f64) -> f64 {
    (period - rayleigh_period(params)) / period
}

/// Outcome of checking a computed period against the bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    pub period: f64,
    pub lower: f64,
    pub upper: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
    /// `period < upper`; only demanded when `y0 > 0`.
    pub strict_upper_ok: Option<bool>,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.lower_ok && self.upper_ok && self.strict_upper_ok.unwrap_or(true)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.lower_ok {
            out.push(format!(
                "period {:e} below lower bound {:e}",
                self.period, self.lower
            ));
        }
        if !self.upper_ok {
            out.push(format!(
                "period {:e} above upper bound {:e}",
                self.period, self.upper
            ));
        }
        if self.strict_upper_ok == Some(false) {
            out.push(format!(
                "period {:e} not strictly below {:e}",
                self.period, self.upper
            ));
        }
        out
    }
}

/// Checks `lower <= p <= upper` with relative slack [`SANDWICH_SLACK`] plus the
/// estimate's own error, and `p < upper` strictly when `y0 > 0`.
pub fn check_sandwich(osc: &Oscillation, p: &PeriodEstimate) -> SandwichReport {
    let lower = lower_bound_corrected(osc);
    let upper = upper_bound(&osc.params);
    let slack = SANDWICH_SLACK * p.value.abs() + p.err_estimate;
    SandwichReport {
        period: p.value,
        lower,
        upper,
        lower_ok: lower - slack <= p.value,
        upper_ok: p.value <= upper + slack,
        strict_upper_ok: (osc.y0() > 0.0).then_some(p.value < upper),
    }
}
