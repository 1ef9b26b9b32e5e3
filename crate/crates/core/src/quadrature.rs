//! Exact period by quadrature of the first-integral period formula.
//!
//! With `y = y0 sin(theta)` the inverse-square-root singularity at the
//! turning point cancels against the Jacobian, leaving
//!
//! ```text
//! P = 4 sqrt(m / (2 sigma)) * integral_0^{pi/2} dtheta / sqrt(g(y0 sin theta))
//! g(y) = 1/L0 - 2 / (sqrt(L^2 + y^2) + sqrt(L^2 + y0^2))
//! ```
//!
//! whose integrand is smooth and bounded because `g >= 1/L0 - 1/L > 0`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::integrate::integrate_adaptive;
use crate::model::{rayleigh_period, Oscillation};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub max_refinements: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_refinements: 30,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.rel_tol.is_nan() || self.rel_tol <= 0.0 || self.max_refinements < 1 {
            return Err(Error::InvalidParams(
                "quadrature needs rel_tol > 0 and max_refinements >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Which computation produced a [`PeriodEstimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Quadrature,
    Elliptic,
    OdeSim,
    RayleighApprox,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Elliptic => "elliptic",
            Method::OdeSim => "ode",
            Method::RayleighApprox => "rayleigh",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A period value with its provenance and an estimated absolute error.
///
/// `err_estimate` is heuristic, not a rigorous enclosure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodEstimate {
    pub value: f64,
    pub method: Method,
    pub err_estimate: f64,
}

/// `g(y) = 1/L0 - 2/(sqrt(L^2+y^2) + z0)`, evaluated without cancellation as
/// `((r - L) + (z0 - L) + 2 eps) / (L0 (r + z0))`.
pub fn radicand_g(osc: &Oscillation, y: f64) -> f64 {
    let p = &osc.params;
    let (l, y0) = (p.l(), osc.y0());
    let r = l.hypot(y);
    let z0 = osc.z0();
    let excess = y * y / (r + l) + y0 * y0 / (z0 + l) + 2.0 * p.epsilon();
    excess / (p.l0() * (r + z0))
}

/// Magnitude of the velocity at displacement `y`.
pub fn speed(osc: &Oscillation, y: f64) -> Result<f64> {
    let y0 = osc.y0();
    if y.abs() > y0 {
        return Err(Error::OutOfRange { y, y0 });
    }
    let p = &osc.params;
    // (y0 - |y|)(y0 + |y|) vanishes exactly at the turning points
    let span = (y0 - y.abs()) * (y0 + y.abs());
    Ok((2.0 * p.sigma() / p.mass() * span * radicand_g(osc, y)).sqrt())
}

/// `4 sqrt(m / (2 sigma))`, the prefactor shared by the exact-period formulas.
pub(crate) fn period_prefactor(osc: &Oscillation) -> f64 {
    4.0 * (osc.params.mass() / (2.0 * osc.params.sigma())).sqrt()
}

/// Exact period by adaptive quadrature of the theta-form integral.
pub fn exact_period(osc: &Oscillation, cfg: &QuadratureConfig) -> Result<PeriodEstimate> {
    cfg.validate()?;
    if osc.is_degenerate() {
        return Ok(PeriodEstimate {
            value: rayleigh_period(&osc.params),
            method: Method::Quadrature,
            err_estimate: 0.0,
        });
    }
    let y0 = osc.y0();
    let integrand = |theta: f64| 1.0 / radicand_g(osc, y0 * theta.sin()).sqrt();
    let r = integrate_adaptive(&integrand, 0.0, FRAC_PI_2, cfg.rel_tol, cfg.max_refinements)?;
    let scale = period_prefactor(osc);
    Ok(PeriodEstimate {
        value: scale * r.value,
        method: Method::Quadrature,
        err_estimate: scale * r.abs_err,
    })
}
