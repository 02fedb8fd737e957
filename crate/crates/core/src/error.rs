use thiserror::Error;

/// Errors raised by the fan library.
///
/// Variants are grouped by what went wrong rather than where: callers (the
/// CLI in particular) map them onto distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated precondition does not hold (for example `r < 1` for a
    /// never-connect pair).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The slope pair is multiplicatively dependent: `r^k = rho^l`.
    #[error("r and rho connect: r^{k} = rho^{l}")]
    Connects { k: i64, l: i64 },

    /// A leg parameter outside `[0, t_max]`.
    #[error("parameter {t} outside [0, {t_max}]")]
    Range { t: String, t_max: String },

    /// Mismatched lengths or depths.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A configured budget would be exceeded.
    #[error("budget exceeded: {0}")]
    Resource(String),

    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
