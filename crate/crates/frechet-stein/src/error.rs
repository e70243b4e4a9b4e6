use thiserror::Error;

/// Errors produced by the numerical kernel and the layers built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval: lo ({lo}) must lie strictly below hi ({hi})")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// The iteration budget ran out before the requested tolerance was met.
    /// Carries the best estimate together with a bound on its error.
    #[error("failed to converge: best estimate {estimate} with error bound {error_bound}")]
    NonConvergence { estimate: f64, error_bound: f64 },

    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
