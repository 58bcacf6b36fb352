use thiserror::Error;

/// Errors raised by the library. Every variant carries a message naming the
/// violated condition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Inputs outside the domain of a formula (e.g. `D ≤ 0`, `n ≤ p`).
    #[error("domain error: {0}")]
    Domain(String),
    /// A quadrature could not be carried out (non-integrable endpoint,
    /// tolerance not reached).
    #[error("quadrature error: {0}")]
    Quadrature(String),
    /// An integral is infinite because of its tail at large radius.
    #[error("divergent integral: {0}")]
    Divergence(String),
    /// A state or test family that carries no information (stalled dynamics,
    /// zero gradient term).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// A time interval or sample count outside what a trace covers.
    #[error("range error: {0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
