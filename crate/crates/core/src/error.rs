use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument was outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported Bessel order {0} (only 0 and 1 are implemented)")]
    UnsupportedOrder(u32),

    #[error("unsupported diffusion kind {kind} for {shape}")]
    UnsupportedKind { kind: &'static str, shape: &'static str },

    /// A closed form produced a non-finite intermediate.
    #[error("internal precision failure in {0}")]
    NonFinite(&'static str),

    #[error("quadrature oracle did not converge: successive refinements {coarse:e} and {fine:e}")]
    OracleConvergence { coarse: f64, fine: f64 },

    #[error("steady state did not converge (optical bistability?): last iterates {previous:e} and {last:e}")]
    Bistability { previous: f64, last: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
