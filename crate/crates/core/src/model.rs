//! Physical parameters and pointwise physics of the stretched-string
//! oscillator: a mass `m` tied to the midpoint of an elastic wire of
//! unstretched half-length `L0`, pre-stretched to half-length `L`, moving
//! perpendicular to the wire.
//!
//! Units are not converted anywhere. Callers must supply a coherent set
//! (SI or otherwise).

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Physical configuration of the wire and mass.
///
/// Construct with [`StringParams::new`], which enforces `L > L0 > 0`,
/// `sigma > 0` and `m > 0`. Every kernel downstream assumes these hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StringParams {
    l0: f64,
    l: f64,
    sigma: f64,
    mass: f64,
}

impl StringParams {
    pub fn new(l0: f64, l: f64, sigma: f64, mass: f64) -> Result<Self> {
        let finite = [l0, l, sigma, mass].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParams("all parameters must be finite".into()));
        }
        if l0 <= 0.0 {
            return Err(Error::InvalidParams("L0 must be positive".into()));
        }
        if l <= l0 {
            return Err(Error::InvalidParams("L must exceed L0".into()));
        }
        if sigma <= 0.0 {
            return Err(Error::InvalidParams("sigma must be positive".into()));
        }
        if mass <= 0.0 {
            return Err(Error::InvalidParams("mass must be positive".into()));
        }
        Ok(Self { l0, l, sigma, mass })
    }

    /// Unstretched half-length.
    pub fn l0(&self) -> f64 {
        self.l0
    }

    /// Stretched half-length at equilibrium.
    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Pre-stretch `L - L0`.
    pub fn epsilon(&self) -> f64 {
        self.l - self.l0
    }

    /// Rest tension `sigma * (L - L0) / L0`.
    pub fn rest_tension(&self) -> f64 {
        self.sigma * self.epsilon() / self.l0
    }

    /// Squared angular frequency of the linearized motion, `2T/(mL)`.
    pub fn linear_omega_sq(&self) -> f64 {
        2.0 * self.rest_tension() / (self.mass * self.l)
    }
}

/// A complete problem instance: wire, mass and release amplitude.
///
/// The mass is released from rest at `y0`. Negative amplitudes are folded
/// onto `|y0|` since the period is even in the amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillation {
    pub params: StringParams,
    y0: f64,
}

impl Oscillation {
    pub fn new(params: StringParams, y0: f64) -> Result<Self> {
        if !y0.is_finite() {
            return Err(Error::InvalidParams("y0 must be finite".into()));
        }
        Ok(Self {
            params,
            y0: y0.abs(),
        })
    }

    pub fn y0(&self) -> f64 {
        self.y0
    }

    /// `sqrt(L^2 + y0^2)`, the half-length of the wire at the turning point.
    pub fn z0(&self) -> f64 {
        self.params.l.hypot(self.y0)
    }

    /// Below this amplitude the period integrand is constant to machine
    /// precision and every method returns the Rayleigh period.
    pub fn is_degenerate(&self) -> bool {
        self.y0 < crate::DEGENERACY_RATIO * self.params.l
    }
}

/// Tension in each half of the wire at displacement `y`.
pub fn tension(p: &StringParams, y: f64) -> f64 {
    if y == 0.0 {
        return p.rest_tension();
    }
    p.sigma * (p.l.hypot(y) - p.l0) / p.l0
}

/// Vertical component of the total wire force on the mass.
pub fn vertical_force(p: &StringParams, y: f64) -> f64 {
    let r = p.l.hypot(y);
    -2.0 * p.sigma * ((r - p.l0) / p.l0) * (y / r)
}

pub fn acceleration(p: &StringParams, y: f64) -> f64 {
    vertical_force(p, y) / p.mass
}

/// Potential part of the specific energy, `(2 sigma/m)(y^2/(2 L0) - sqrt(L^2+y^2))`.
pub fn potential(p: &StringParams, y: f64) -> f64 {
    2.0 * p.sigma / p.mass * (y * y / (2.0 * p.l0) - p.l.hypot(y))
}

/// Specific energy `v^2/2 + potential(y)`, conserved along exact motion.
pub fn energy(p: &StringParams, y: f64, v: f64) -> f64 {
    0.5 * v * v + potential(p, y)
}

/// Period of the linearized (constant-tension) motion, `2 pi / sqrt(2T/(mL))`.
pub fn rayleigh_period(p: &StringParams) -> f64 {
    2.0 * PI / p.linear_omega_sq().sqrt()
}

/// Harmonic solution `y0 cos(omega t)` of the linearized equation.
pub fn rayleigh_solution(p: &StringParams, y0: f64, t: f64) -> f64 {
    y0 * (p.linear_omega_sq().sqrt() * t).cos()
}
