//! Period of the stretched-string oscillator.
//!
//! A mass tied to the middle of a pre-stretched elastic wire oscillates
//! perpendicular to it. This crate computes the exact period three
//! independent ways, the constant-tension (Rayleigh) approximation, and
//! a-priori upper and lower bounds on the exact period:
//!
//! - [`quadrature::exact_period`]: adaptive Gauss-Kronrod on the
//!   desingularized period integral.
//! - [`elliptic::period_elliptic`]: complete elliptic integrals of the first
//!   and third kind in Carlson symmetric form.
//! - [`odesim`]: Dormand-Prince integration of the equation of motion with
//!   turning-point detection.
//! - [`bounds`]: the sandwich `lower <= P <= upper` and the relative-error
//!   bracket for the Rayleigh approximation.

pub mod bounds;
pub mod carlson;
pub mod elliptic;
pub mod error;
pub mod integrate;
pub mod model;
pub mod odesim;
pub mod quadrature;
pub mod verify;

pub use bounds::{check_sandwich, PeriodBounds, SandwichReport};
pub use error::{Error, Result};
pub use model::{Oscillation, StringParams};
pub use quadrature::{Method, PeriodEstimate, QuadratureConfig};

/// Amplitudes below `DEGENERACY_RATIO * L` are treated as zero.
pub const DEGENERACY_RATIO: f64 = 1e-9;
