//! Exact period through the quartic-radical form of the period integral.
//!
//! Substituting `z^2 = L^2 + y^2` turns the period integral into
//!
//! ```text
//! P = 4 sqrt(m / (2 sigma)) * integral_L^{z0} z dz / sqrt(2 Q(z))
//! Q(z) = (z^2 - L^2)(z0 - z)(z + z0 - 2 L0) / (2 L0)
//!      = -(1/(2 L0)) (z + L)(z - (2 L0 - z0))(z - L)(z - z0)
//! ```
//!
//! Expanded, `Q(z) = -z^4/(2L0) + z^3 + ((L^2 + z0^2)/(2L0) - z0) z^2
//! - L^2 z + L^2 z0 - L^2 z0^2/(2L0)`.
//!
//! The integration runs between the two largest roots `b = L` and `a = z0`.
//! With `c` the third-largest root, the map
//! `z = c + (b - c) / (1 - alpha^2 sn^2 u)`, `alpha^2 = (a - b)/(a - c)`,
//! reduces it to complete Legendre integrals:
//!
//! ```text
//! integral_b^a z dz / sqrt((a-z)(z-b)(z-c)(z-d))
//!     = g [c K(k) + (b - c) Pi(alpha^2, k)]
//! g   = 2 / sqrt((a - c)(b - d))
//! k^2 = (a - b)(c - d) / ((a - c)(b - d))
//! ```
//!
//! with `K` and `Pi` evaluated through `R_F` and `R_J`. The formula only needs
//! the interval to sit between the two largest roots, so it holds whether
//! `2 L0 - z0` lies above or below `-L`.

use crate::carlson::{complete_first_kind, complete_third_kind};
use crate::error::{Error, Result};
use crate::model::{rayleigh_period, Oscillation};
use crate::quadrature::{period_prefactor, Method, PeriodEstimate};

/// Default relative tolerance handed to each Carlson evaluation.
pub const DEFAULT_CARLSON_TOL: f64 = 1e-13;

/// The four real roots of the z-space quartic, ascending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticRoots {
    pub roots: [f64; 4],
    /// Leading coefficient `-1/(2 L0)`.
    pub leading: f64,
}

impl QuarticRoots {
    /// `leading * prod(z - r_i)`.
    pub fn eval(&self, z: f64) -> f64 {
        self.roots.iter().fold(self.leading, |acc, r| acc * (z - r))
    }

    pub fn sum(&self) -> f64 {
        self.roots.iter().sum()
    }
}

/// Integration limits `(L, sqrt(L^2 + y0^2))` in z-space.
pub fn to_z_space(osc: &Oscillation) -> Result<(f64, f64)> {
    if osc.is_degenerate() {
        return Err(Error::DegenerateAmplitude { y0: osc.y0() });
    }
    Ok((osc.params.l(), osc.z0()))
}

/// Closed-form roots `{-L, 2 L0 - z0, L, z0}`, sorted.
pub fn quartic_roots(osc: &Oscillation) -> QuarticRoots {
    let l0 = osc.params.l0();
    let l = osc.params.l();
    let z0 = osc.z0();
    let mut roots = [-l, 2.0 * l0 - z0, l, z0];
    roots.sort_by(f64::total_cmp);
    QuarticRoots {
        roots,
        leading: -0.5 / l0,
    }
}

/// Coefficients `[c4, c3, c2, c1, c0]` of the expanded quartic `Q(z)`.
pub fn quartic_coefficients(osc: &Oscillation) -> [f64; 5] {
    let l0 = osc.params.l0();
    let l2 = osc.params.l().powi(2);
    let z0 = osc.z0();
    [
        -0.5 / l0,
        1.0,
        (l2 + z0 * z0) / (2.0 * l0) - z0,
        -l2,
        l2 * z0 - l2 * z0 * z0 / (2.0 * l0),
    ]
}

/// `Q(z)` in factored form, `(z^2 - L^2)(z0 - z)(z + z0 - 2 L0) / (2 L0)`.
pub fn quartic_radicand(osc: &Oscillation, z: f64) -> f64 {
    let l0 = osc.params.l0();
    let l = osc.params.l();
    let z0 = osc.z0();
    (z - l) * (z + l) * (z0 - z) * (z + z0 - 2.0 * l0) / (2.0 * l0)
}

/// Exact period from complete elliptic integrals of the first and third
/// kind, each evaluated to relative tolerance `tol`.
pub fn period_elliptic(osc: &Oscillation, tol: f64) -> Result<PeriodEstimate> {
    if osc.is_degenerate() {
        return Ok(PeriodEstimate {
            value: rayleigh_period(&osc.params),
            method: Method::Elliptic,
            err_estimate: 0.0,
        });
    }
    let l0 = osc.params.l0();
    let l = osc.params.l();
    let z0 = osc.z0();
    let (a, b) = (z0, l);
    let (c, d) = {
        let other = 2.0 * l0 - z0;
        if other >= -l {
            (other, -l)
        } else {
            (-l, other)
        }
    };
    // a - b and a - c without cancellation: z0 - L = y0^2 / (z0 + L)
    let a_minus_b = osc.y0().powi(2) / (z0 + l);
    let a_minus_c = a - c;
    let b_minus_d = b - d;
    let k_sq = a_minus_b * (c - d) / (a_minus_c * b_minus_d);
    let n = a_minus_b / a_minus_c;
    let g = 2.0 / (a_minus_c * b_minus_d).sqrt();

    let k = complete_first_kind(k_sq, tol)?;
    let pi = complete_third_kind(n, k_sq, tol)?;
    let integral = g * (c * k + (b - c) * pi);
    // 1 / sqrt(2 Q) = sqrt(L0) / sqrt(prod(z - r_i))
    let value = period_prefactor(osc) * l0.sqrt() * integral;
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::ConvergenceFailure {
            method: "elliptic",
            detail: format!("non-positive period {value}"),
        });
    }
    Ok(PeriodEstimate {
        value,
        method: Method::Elliptic,
        err_estimate: 4.0 * tol * value,
    })
}
