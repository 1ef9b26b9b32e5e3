//! Time integration of the full equation of motion and period extraction
//! from turning points.
//!
//! The first-order system `y' = v`, `v' = a(y)` is advanced with the
//! Dormand-Prince 5(4) pair under PI step-size control. A turning point is a
//! sign change of `v` across an accepted step. Its time is first guessed
//! from the cubic Hermite interpolant of `v` over the step, then polished by
//! Newton iteration on `v`, where each trial evaluation is a single
//! Dormand-Prince step of the trial length taken from the start of the
//! enclosing step.

use crate::error::{Error, Result};
use crate::model::{self, rayleigh_period, Oscillation, StringParams};
use crate::quadrature::{Method, PeriodEstimate};

/// Right-hand side of `y'' = a(y)` together with its conserved energy.
pub trait Dynamics {
    fn acceleration(&self, y: f64) -> f64;
    fn energy(&self, y: f64, v: f64) -> f64;
}

impl Dynamics for StringParams {
    fn acceleration(&self, y: f64) -> f64 {
        model::acceleration(self, y)
    }

    fn energy(&self, y: f64, v: f64) -> f64 {
        model::energy(self, y, v)
    }
}

/// The constant-tension harmonic approximation of a [`StringParams`].
#[derive(Debug, Clone, Copy)]
pub struct Linearized(pub StringParams);

impl Dynamics for Linearized {
    fn acceleration(&self, y: f64) -> f64 {
        -self.0.linear_omega_sq() * y
    }

    fn energy(&self, y: f64, v: f64) -> f64 {
        0.5 * (v * v + self.0.linear_omega_sq() * y * y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub rel_tol: f64,
    /// Absolute tolerance; `None` means `1e-12 * y0`.
    pub abs_tol: Option<f64>,
    pub max_steps: usize,
    pub n_periods: usize,
    /// Keep every `sample_stride`-th accepted step in the trajectory.
    pub sample_stride: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: None,
            max_steps: 10_000_000,
            n_periods: 10,
            sample_stride: 1,
        }
    }
}

impl SimConfig {
    fn validate(&self) -> Result<()> {
        let abs_ok = self.abs_tol.is_none_or(|a| a > 0.0);
        if self.rel_tol.is_nan()
            || self.rel_tol <= 0.0
            || !abs_ok
            || self.n_periods < 1
            || self.sample_stride < 1
        {
            return Err(Error::InvalidParams(
                "simulation needs positive tolerances, n_periods >= 1 and sample_stride >= 1"
                    .into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub y: f64,
    pub v: f64,
    pub energy: f64,
}

/// Sampled solution plus the times where `v = 0`, the release at `t = 0`
/// included.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub events: Vec<f64>,
}

impl Trajectory {
    /// `max |E(t) - E(0)|` over the samples, divided by `|E(0)|`.
    pub fn max_energy_drift(&self) -> f64 {
        let e0 = self.samples[0].energy;
        let worst = self
            .samples
            .iter()
            .map(|s| (s.energy - e0).abs())
            .fold(0.0, f64::max);
        worst / e0.abs()
    }
}

type State = [f64; 2];

#[allow(clippy::excessive_precision)]
mod tableau {
    pub const A: [[f64; 6]; 7] = [
        [0.0; 6],
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    /// Fifth-order weights minus embedded fourth-order weights.
    pub const E: [f64; 7] = [
        71.0 / 57600.0,
        0.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    ];
}

/// One Dormand-Prince step of signed length `h`. Returns the fifth-order
/// solution and the local error vector. The last stage is evaluated at the
/// new point, so the final derivative is available from `rhs(new)`.
fn dp_step<D: Dynamics + ?Sized>(sys: &D, x: State, h: f64) -> (State, State) {
    let rhs = |s: State| -> State { [s[1], sys.acceleration(s[0])] };
    let mut k = [[0.0; 2]; 7];
    k[0] = rhs(x);
    for i in 1..7 {
        let mut s = x;
        for (j, kj) in k.iter().enumerate().take(i) {
            let a = tableau::A[i][j];
            s[0] += h * a * kj[0];
            s[1] += h * a * kj[1];
        }
        k[i] = rhs(s);
    }
    // row 6 of A holds the fifth-order weights (FSAL)
    let mut next = x;
    let mut err = [0.0; 2];
    for (i, ki) in k.iter().enumerate() {
        let b = if i < 6 { tableau::A[6][i] } else { 0.0 };
        next[0] += h * b * ki[0];
        next[1] += h * b * ki[1];
        err[0] += h * tableau::E[i] * ki[0];
        err[1] += h * tableau::E[i] * ki[1];
    }
    (next, err)
}

struct Controller {
    rel_tol: f64,
    abs_tol: f64,
    prev_err: f64,
}

impl Controller {
    const SAFETY: f64 = 0.9;
    const ALPHA: f64 = 0.2 - 0.75 * Self::BETA;
    const BETA: f64 = 0.04;

    fn error_norm(&self, old: &State, new: &State, err: &State) -> f64 {
        let sum: f64 = (0..2)
            .map(|i| {
                let sc = self.abs_tol + self.rel_tol * old[i].abs().max(new[i].abs());
                (err[i] / sc).powi(2)
            })
            .sum();
        (0.5 * sum).sqrt()
    }

    fn factor(&mut self, err: f64, accepted: bool) -> f64 {
        if err == 0.0 {
            return 5.0;
        }
        let mut fac = Self::SAFETY * err.powf(-Self::ALPHA);
        if accepted {
            fac *= self.prev_err.powf(Self::BETA);
            self.prev_err = err.max(1e-4);
            fac.clamp(0.2, 5.0)
        } else {
            fac.clamp(0.2, 1.0)
        }
    }
}

/// Integrates from `x` at time 0 over signed duration `span`, returning the
/// final state.
pub fn propagate<D: Dynamics + ?Sized>(
    sys: &D,
    x: [f64; 2],
    span: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_steps: usize,
) -> Result<[f64; 2]> {
    let dir = span.signum();
    let mut ctl = Controller {
        rel_tol,
        abs_tol,
        prev_err: 1.0,
    };
    let (mut t, mut x) = (0.0f64, x);
    let mut h = initial_step(sys, &x, rel_tol, abs_tol).min(span.abs()) * dir;
    for _ in 0..max_steps {
        let remaining = span - t;
        if remaining.abs() <= 4.0 * f64::EPSILON * span.abs() {
            return Ok(x);
        }
        if h.abs() > remaining.abs() {
            h = remaining;
        }
        let (next, err) = dp_step(sys, x, h);
        let e = ctl.error_norm(&x, &next, &err);
        let accepted = e <= 1.0;
        let fac = ctl.factor(e, accepted);
        if accepted {
            t += h;
            x = next;
        }
        h *= fac;
        if h.abs() < 1e-14 * span.abs() {
            return Err(Error::StepFailure { t });
        }
    }
    Err(Error::MaxStepsExceeded(max_steps))
}

fn initial_step<D: Dynamics + ?Sized>(sys: &D, x: &State, rel_tol: f64, abs_tol: f64) -> f64 {
    // Hairer's heuristic for order 5
    let f0 = [x[1], sys.acceleration(x[0])];
    let sc = |i: usize| abs_tol + rel_tol * x[i].abs();
    let d0 = ((x[0] / sc(0)).powi(2) + (x[1] / sc(1)).powi(2)).sqrt();
    let d1 = ((f0[0] / sc(0)).powi(2) + (f0[1] / sc(1)).powi(2)).sqrt();
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let x1 = [x[0] + h0 * f0[0], x[1] + h0 * f0[1]];
    let f1 = [x1[1], sys.acceleration(x1[0])];
    let d2 = (((f1[0] - f0[0]) / sc(0)).powi(2) + ((f1[1] - f0[1]) / sc(1)).powi(2)).sqrt() / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1)
}

/// Initial guess for `v = 0` inside the accepted step `x0 -> x1` of length `h`.
fn locate_turn<D: Dynamics + ?Sized>(sys: &D, x0: State, x1: State, h: f64) -> f64 {
    // cubic Hermite of v on [0, 1] with slopes h*a(y)
    let (v0, v1) = (x0[1], x1[1]);
    let (m0, m1) = (h * sys.acceleration(x0[0]), h * sys.acceleration(x1[0]));
    let hermite = |s: f64| {
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * v0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * v1
            + (s3 - s2) * m1
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if hermite(mid) * v0 > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    h * 0.5 * (lo + hi)
}

/// Simulates `osc` under `sys` until `n_periods` full periods of turning
/// events have been recorded.
pub fn simulate_with<D: Dynamics + ?Sized>(
    sys: &D,
    osc: &Oscillation,
    cfg: &SimConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    let y0 = osc.y0();
    if osc.is_degenerate() {
        return Err(Error::DegenerateAmplitude { y0 });
    }
    let abs_tol = cfg.abs_tol.unwrap_or(1e-12 * y0);
    let mut ctl = Controller {
        rel_tol: cfg.rel_tol,
        abs_tol,
        prev_err: 1.0,
    };
    let h_max = rayleigh_period(&osc.params) / 16.0;

    let mut x: State = [y0, 0.0];
    let mut t = 0.0f64;
    let sample = |t: f64, x: &State| Sample {
        t,
        y: x[0],
        v: x[1],
        energy: sys.energy(x[0], x[1]),
    };
    let mut samples = vec![sample(t, &x)];
    let mut events = vec![0.0];
    let wanted = 2 * cfg.n_periods + 1;
    let mut h = initial_step(sys, &x, cfg.rel_tol, abs_tol).min(h_max);
    let mut accepted_steps = 0usize;

    for _ in 0..cfg.max_steps {
        let (next, err) = dp_step(sys, x, h);
        let e = ctl.error_norm(&x, &next, &err);
        let accepted = e <= 1.0;
        let fac = ctl.factor(e, accepted);
        if accepted {
            if x[1] != 0.0 && (next[1] == 0.0 || x[1].signum() != next[1].signum()) {
                let tau = polish_turn(sys, x, next, h);
                events.push(t + tau);
            }
            t += h;
            x = next;
            accepted_steps += 1;
            let done = events.len() >= wanted;
            if accepted_steps.is_multiple_of(cfg.sample_stride) || done {
                samples.push(sample(t, &x));
            }
            if done {
                return Ok(Trajectory { samples, events });
            }
        }
        h = (h * fac).min(h_max);
        if h < 1e-14 * h_max {
            return Err(Error::StepFailure { t });
        }
    }
    Err(Error::MaxStepsExceeded(cfg.max_steps))
}

fn polish_turn<D: Dynamics + ?Sized>(sys: &D, x0: State, x1: State, h: f64) -> f64 {
    let guess = locate_turn(sys, x0, x1, h);
    let (mut lo, mut hi) = (0.0, h);
    let mut tau = guess;
    for _ in 0..50 {
        let (xs, _) = dp_step(sys, x0, tau);
        let v = xs[1];
        if v == 0.0 {
            return tau;
        }
        if v.signum() == x0[1].signum() {
            lo = tau;
        } else {
            hi = tau;
        }
        let slope = sys.acceleration(xs[0]);
        let mut next = tau - v / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let done = (next - tau).abs() <= 1e-15 * h.max(tau);
        tau = next;
        if done {
            break;
        }
    }
    tau
}

pub fn simulate(osc: &Oscillation, cfg: &SimConfig) -> Result<Trajectory> {
    simulate_with(&osc.params, osc, cfg)
}

/// Period as twice the mean gap between consecutive turning events, with
/// the gap standard deviation (doubled) as error estimate.
pub fn measure_period(traj: &Trajectory) -> Result<PeriodEstimate> {
    let n = traj.events.len();
    if n < 3 {
        return Err(Error::InsufficientEvents {
            needed: 3,
            found: n,
        });
    }
    let gaps: Vec<f64> = traj.events.windows(2).map(|w| w[1] - w[0]).collect();
    let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let var = gaps.iter().map(|g| (g - mean).powi(2)).sum::<f64>() / (gaps.len() - 1) as f64;
    Ok(PeriodEstimate {
        value: 2.0 * mean,
        method: Method::OdeSim,
        err_estimate: 2.0 * var.sqrt(),
    })
}

/// Simulates and measures in one call.
pub fn period_ode(osc: &Oscillation, cfg: &SimConfig) -> Result<PeriodEstimate> {
    if osc.is_degenerate() {
        return Ok(PeriodEstimate {
            value: rayleigh_period(&osc.params),
            method: Method::OdeSim,
            err_estimate: 0.0,
        });
    }
    measure_period(&simulate(osc, cfg)?)
}
