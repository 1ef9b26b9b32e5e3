use thiserror::Error;

/// Errors raised by parameter validation and the numerical engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{method} failed to converge: {detail}")]
    ConvergenceFailure {
        method: &'static str,
        detail: String,
    },

    #[error("amplitude y0 = {y0:e} is below the degeneracy threshold")]
    DegenerateAmplitude { y0: f64 },

    #[error("y = {y} lies outside the oscillation range [-{y0}, {y0}]")]
    OutOfRange { y: f64, y0: f64 },

    #[error("step size underflow at t = {t}")]
    StepFailure { t: f64 },

    #[error("maximum number of steps ({0}) exceeded")]
    MaxStepsExceeded(usize),

    #[error("need at least {needed} turning events, found {found}")]
    InsufficientEvents { needed: usize, found: usize },
}

impl Error {
    /// True for failures of a numerical engine, as opposed to bad input.
    pub fn is_engine_failure(&self) -> bool {
        !matches!(
            self,
            Error::InvalidParams(_) | Error::OutOfRange { .. } | Error::DegenerateAmplitude { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
