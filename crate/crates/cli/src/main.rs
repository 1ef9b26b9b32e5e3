//! `ssp`: periods of the stretched-string oscillator from the command line.
//!
//! Inputs must use one coherent unit system; nothing is converted.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ssp_core::verify::{DEFAULT_SAMPLES, DEFAULT_SEED};
use ssp_core::Error;

use commands::{Axis, Grid, Inputs, MethodSel};
use output::{num, rows_csv, rows_json};

const EXIT_INVALID: u8 = 1;
const EXIT_ENGINE: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ssp",
    version,
    about = "Exact and approximate periods of a mass on a stretched elastic string",
    long_about = "Exact and approximate periods of a mass on a stretched elastic string.\n\n\
        All quantities must be given in one coherent unit system (e.g. SI); \
        no unit conversion is performed."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the period of one configuration by the selected methods.
    Period {
        #[command(flatten)]
        phys: Phys,
        #[arg(long, value_enum, default_value_t = MethodSel::All)]
        method: MethodSel,
        /// Machine-readable output instead of the summary.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Evaluate periods and bounds along one parameter axis.
    Sweep {
        #[command(flatten)]
        phys: Phys,
        #[arg(long, value_enum, default_value_t = MethodSel::All)]
        method: MethodSel,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Parameter to vary.
        #[arg(long, value_enum)]
        sweep: Axis,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        points: usize,
        /// Space the grid geometrically.
        #[arg(long)]
        log: bool,
    },
    /// Simulate the motion and print t,y,v,E samples as CSV.
    Trajectory {
        #[command(flatten)]
        phys: Phys,
        #[arg(long, default_value_t = 10)]
        periods: usize,
        /// Keep every n-th integrator step.
        #[arg(long, default_value_t = 1)]
        stride: usize,
        /// Integrator step budget.
        #[arg(long, default_value_t = 10_000_000)]
        max_steps: usize,
    },
    /// Run the randomized invariant suite.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, env = "SSP_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Relative error of the Rayleigh period against amplitude, with the
    /// fitted log-log slope.
    Convergence {
        #[command(flatten)]
        phys: Phys,
        /// Amplitudes as fractions of L.
        #[arg(long, value_delimiter = ',', default_value = "0.01,0.02,0.05,0.1,0.2")]
        ratios: Vec<f64>,
        /// Geometric grid of amplitude ratios instead of --ratios.
        #[arg(long, requires_all = ["to", "points"])]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Args, Clone, Copy)]
struct Phys {
    /// Unstretched half-length of the wire.
    #[arg(long, default_value_t = 1.0)]
    l0: f64,
    /// Stretched half-length at equilibrium (must exceed L0).
    #[arg(long, default_value_t = 1.25)]
    l: f64,
    /// Spring constant (force units).
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// Release amplitude.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    y0: f64,
    /// Relative tolerance of the quadrature engine.
    #[arg(long, env = "SSP_REL_TOL", default_value_t = 1e-12)]
    tol: f64,
}

impl Phys {
    fn inputs(&self) -> Inputs {
        Inputs {
            l0: self.l0,
            l: self.l,
            sigma: self.sigma,
            mass: self.mass,
            y0: self.y0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    Core(Error),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Period {
            phys,
            method,
            format,
        } => {
            let osc = phys.inputs().oscillation()?;
            let ev = commands::evaluate(&osc, method, phys.tol)?;
            match format {
                None => {
                    let (text, _) = commands::period_report(&ev);
                    emit(&text);
                }
                Some(Format::Csv) => emit(&rows_csv(&[ev.row()])),
                Some(Format::Json) => emit(&rows_json(&[ev.row()])),
            }
        }
        Command::Sweep {
            phys,
            method,
            format,
            sweep,
            from,
            to,
            points,
            log,
        } => {
            let grid = Grid {
                axis: sweep,
                from,
                to,
                points,
                log,
            };
            let rows = commands::sweep(phys.inputs(), &grid, method, phys.tol)?;
            match format {
                Format::Csv => emit(&rows_csv(&rows)),
                Format::Json => emit(&rows_json(&rows)),
            }
            let passed = rows.iter().filter(|r| r.pass).count();
            eprintln!("{passed}/{} rows within bounds", rows.len());
        }
        Command::Trajectory {
            phys,
            periods,
            stride,
            max_steps,
        } => {
            let osc = phys.inputs().oscillation()?;
            emit(&commands::trajectory_csv(&osc, periods, stride, max_steps)?);
        }
        Command::Verify { samples, seed } => {
            let report = commands::verify(samples, seed)?;
            emit(&commands::verify_text(&report));
            if !report.passed() {
                return Err(Failure::Invariant("invariant violations found".into()));
            }
        }
        Command::Convergence {
            phys,
            ratios,
            from,
            to,
            points,
            format,
        } => {
            let ratios = match (from, to, points) {
                (Some(from), Some(to), Some(points)) => Grid {
                    axis: Axis::Y0,
                    from,
                    to,
                    points,
                    log: true,
                }
                .values()?,
                _ => ratios,
            };
            let (rows, slope) = commands::convergence(phys.inputs(), &ratios, phys.tol)?;
            match format {
                Format::Csv => {
                    let mut text = String::from("y0,period,R,R_bound_corrected\n");
                    for r in &rows {
                        text.push_str(&format!(
                            "{},{},{},{}\n",
                            num(r.y0),
                            num(r.period),
                            num(r.r),
                            num(r.r_bound)
                        ));
                    }
                    emit(&text);
                }
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "y0": r.y0, "period": r.period, "R": r.r, "R_bound_corrected": r.r_bound
                            })
                        })
                        .collect();
                    let doc = serde_json::json!({ "rows": rows, "slope": slope });
                    emit(&format!(
                        "{}\n",
                        serde_json::to_string_pretty(&doc).expect("json")
                    ));
                }
            }
            eprintln!("slope {}", num(slope));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INVALID)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_engine_failure() {
                EXIT_ENGINE
            } else {
                EXIT_INVALID
            })
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVARIANT)
        }
    }
}
