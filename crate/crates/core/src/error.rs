use thiserror::Error;

use crate::dynamics::State;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method failed to converge.
    #[error("numeric error: {what} (residual {residual:e})")]
    Numeric { what: String, residual: f64 },

    /// The integration left the physical domain `a > 0, rho > 0`.
    #[error("domain exit at t = {t}: {reason}")]
    DomainExit { t: f64, last: State, reason: String },

    /// A fit or estimate was requested on data that cannot support it.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numeric(what: impl Into<String>, residual: f64) -> Self {
        Error::Numeric {
            what: what.into(),
            residual,
        }
    }

    pub(crate) fn insufficient(msg: impl Into<String>) -> Self {
        Error::InsufficientData(msg.into())
    }

    /// `true` for errors caused by inputs rather than by numerical failure.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::DomainExit { .. } | Error::Parse(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
