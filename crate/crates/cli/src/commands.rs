use std::fmt::Write as _;

use rayon::prelude::*;
use ssp_core::bounds::{check_sandwich, relative_error, PeriodBounds};
use ssp_core::elliptic::{period_elliptic, DEFAULT_CARLSON_TOL};
use ssp_core::odesim::{period_ode, simulate, SimConfig};
use ssp_core::quadrature::{exact_period, QuadratureConfig};
use ssp_core::verify::{run_suite, VerifyReport};
use ssp_core::{Error, Oscillation, PeriodEstimate, StringParams};

use crate::output::{human, num, SweepRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodSel {
    Quadrature,
    Elliptic,
    Ode,
    All,
}

impl MethodSel {
    fn elliptic(self) -> bool {
        matches!(self, MethodSel::Elliptic | MethodSel::All)
    }

    fn ode(self) -> bool {
        matches!(self, MethodSel::Ode | MethodSel::All)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Axis {
    L0,
    L,
    Sigma,
    Mass,
    Y0,
}

/// Physical inputs exactly as given on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inputs {
    pub l0: f64,
    pub l: f64,
    pub sigma: f64,
    pub mass: f64,
    pub y0: f64,
}

impl Inputs {
    pub fn oscillation(&self) -> Result<Oscillation, Error> {
        Oscillation::new(
            StringParams::new(self.l0, self.l, self.sigma, self.mass)?,
            self.y0,
        )
    }

    fn with(mut self, axis: Axis, value: f64) -> Self {
        match axis {
            Axis::L0 => self.l0 = value,
            Axis::L => self.l = value,
            Axis::Sigma => self.sigma = value,
            Axis::Mass => self.mass = value,
            Axis::Y0 => self.y0 = value,
        }
        self
    }
}

/// All period estimates for one oscillation.
pub struct Evaluation {
    pub osc: Oscillation,
    pub quadrature: PeriodEstimate,
    pub elliptic: Option<PeriodEstimate>,
    pub ode: Option<PeriodEstimate>,
    pub bounds: PeriodBounds,
}

impl Evaluation {
    pub fn estimates(&self) -> impl Iterator<Item = &PeriodEstimate> {
        std::iter::once(&self.quadrature)
            .chain(self.elliptic.iter())
            .chain(self.ode.iter())
    }

    pub fn row(&self) -> SweepRow {
        let p = &self.osc.params;
        SweepRow {
            l0: p.l0(),
            l: p.l(),
            sigma: p.sigma(),
            mass: p.mass(),
            y0: self.osc.y0(),
            period_quadrature: self.quadrature.value,
            period_elliptic: self.elliptic.map(|e| e.value),
            period_ode: self.ode.map(|e| e.value),
            upper: self.bounds.upper,
            lower_corrected: self.bounds.lower_corrected,
            lower_printed: self.bounds.lower_printed,
            r: relative_error(p, self.quadrature.value),
            r_bound_corrected: self.bounds.rel_error_bound_corrected,
            pass: check_sandwich(&self.osc, &self.quadrature).passed(),
        }
    }
}

pub fn evaluate(osc: &Oscillation, method: MethodSel, tol: f64) -> Result<Evaluation, Error> {
    let quad_cfg = QuadratureConfig {
        rel_tol: tol,
        ..QuadratureConfig::default()
    };
    let quadrature = exact_period(osc, &quad_cfg)?;
    let elliptic = method
        .elliptic()
        .then(|| period_elliptic(osc, DEFAULT_CARLSON_TOL.min(tol)))
        .transpose()?;
    let ode = method
        .ode()
        .then(|| period_ode(osc, &SimConfig::default()))
        .transpose()?;
    Ok(Evaluation {
        osc: *osc,
        quadrature,
        elliptic,
        ode,
        bounds: PeriodBounds::new(osc),
    })
}

/// Human-readable report for `period`; returns the text and the verdict.
pub fn period_report(ev: &Evaluation) -> (String, bool) {
    let mut out = String::new();
    let mut verdict = true;
    for est in ev.estimates() {
        let report = check_sandwich(&ev.osc, est);
        verdict &= report.passed();
        let _ = writeln!(
            out,
            "period ({:<10}) {:>14}  err {:.1e}  {}",
            est.method.name(),
            human(est.value),
            est.err_estimate,
            if report.passed() {
                "ok"
            } else {
                "OUT OF BOUNDS"
            }
        );
    }
    let b = &ev.bounds;
    let p = &ev.osc.params;
    let _ = writeln!(out, "rayleigh period (upper)  {:>14}", human(b.upper));
    let _ = writeln!(
        out,
        "lower bound              {:>14}",
        human(b.lower_corrected)
    );
    let _ = writeln!(
        out,
        "lower bound (as printed) {:>14}",
        human(b.lower_printed)
    );
    let _ = writeln!(
        out,
        "relative error R         {:>14}",
        human(relative_error(p, ev.quadrature.value))
    );
    let _ = writeln!(
        out,
        "R lower limit            {:>14}",
        human(b.rel_error_bound_corrected)
    );
    let _ = writeln!(
        out,
        "R lower limit (printed)  {:>14}",
        human(b.rel_error_bound_printed)
    );
    let _ = writeln!(out, "sandwich: {}", if verdict { "pass" } else { "FAIL" });
    (out, verdict)
}

pub struct Grid {
    pub axis: Axis,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub log: bool,
}

impl Grid {
    pub fn values(&self) -> Result<Vec<f64>, Error> {
        let bad = |m: &str| Err(Error::InvalidParams(format!("bad grid: {m}")));
        if self.points == 0 {
            return bad("--points must be at least 1");
        }
        if !(self.from.is_finite() && self.to.is_finite()) {
            return bad("--from and --to must be finite");
        }
        if self.log && (self.from <= 0.0 || self.to <= 0.0) {
            return bad("--log needs positive --from and --to");
        }
        if self.points == 1 {
            return Ok(vec![self.from]);
        }
        let n = (self.points - 1) as f64;
        Ok((0..self.points)
            .map(|i| {
                let s = i as f64 / n;
                if self.log {
                    (self.from.ln() + s * (self.to.ln() - self.from.ln())).exp()
                } else {
                    self.from + s * (self.to - self.from)
                }
            })
            .collect())
    }
}

/// Evaluates every grid point concurrently; rows come back in axis order.
pub fn sweep(
    base: Inputs,
    grid: &Grid,
    method: MethodSel,
    tol: f64,
) -> Result<Vec<SweepRow>, Error> {
    let oscs = grid
        .values()?
        .into_iter()
        .map(|v| base.with(grid.axis, v).oscillation())
        .collect::<Result<Vec<_>, _>>()?;
    oscs.par_iter()
        .map(|o| evaluate(o, method, tol).map(|ev| ev.row()))
        .collect()
}

pub fn trajectory_csv(
    osc: &Oscillation,
    periods: usize,
    stride: usize,
    max_steps: usize,
) -> Result<String, Error> {
    let cfg = SimConfig {
        n_periods: periods,
        sample_stride: stride,
        max_steps,
        ..SimConfig::default()
    };
    let traj = simulate(osc, &cfg)?;
    let mut out = String::from("t,y,v,E\n");
    for s in &traj.samples {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            num(s.t),
            num(s.y),
            num(s.v),
            num(s.energy)
        );
    }
    Ok(out)
}

pub fn verify_text(report: &VerifyReport) -> String {
    let mut out = format!("samples={} seed={}\n", report.samples, report.seed);
    for c in &report.checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{status} {} ({} checked, {} failed)",
            c.name,
            c.checked,
            c.failures.len()
        );
        for f in c.failures.iter().take(10) {
            let _ = writeln!(out, "    {f}");
        }
    }
    out
}

pub fn verify(samples: usize, seed: u64) -> Result<VerifyReport, Error> {
    run_suite(samples, seed)
}

pub struct ConvergenceRow {
    pub y0: f64,
    pub period: f64,
    pub r: f64,
    pub r_bound: f64,
}

/// Relative error of the Rayleigh period at amplitudes `ratios * L`, plus the
/// least-squares slope of `ln|R|` against `ln y0`.
pub fn convergence(
    base: Inputs,
    ratios: &[f64],
    tol: f64,
) -> Result<(Vec<ConvergenceRow>, f64), Error> {
    if ratios.len() < 2 || ratios.iter().any(|r| r.is_nan() || *r <= 0.0) {
        return Err(Error::InvalidParams(
            "need at least two positive amplitude ratios".into(),
        ));
    }
    let cfg = QuadratureConfig {
        rel_tol: tol,
        ..QuadratureConfig::default()
    };
    let rows = ratios
        .iter()
        .map(|ratio| {
            let osc = base.with(Axis::Y0, ratio * base.l).oscillation()?;
            let period = exact_period(&osc, &cfg)?.value;
            Ok(ConvergenceRow {
                y0: osc.y0(),
                period,
                r: relative_error(&osc.params, period),
                r_bound: PeriodBounds::new(&osc).rel_error_bound_corrected,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let xs: Vec<f64> = rows.iter().map(|r| r.y0.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.r.abs().ln()).collect();
    Ok((rows, least_squares_slope(&xs, &ys)))
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
