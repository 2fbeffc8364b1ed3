use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input lies outside the range the kernels can handle exactly.
    #[error("{what} = {value} is out of range (supported: {min}..={max})")]
    Range {
        what: &'static str,
        value: i128,
        min: i128,
        max: i128,
    },

    /// A checked 64-bit operation would have wrapped.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("verification failed: {0}")]
    Verification(String),

    /// No admissible (r, s) made every coefficient integral.
    #[error("no admissible (r, s) for quadruple ({a}, {b}, {c}, {d})")]
    Construction { a: i64, b: i64, c: i64, d: i64 },

    /// The bounded scan was asked to go past its guard.
    #[error("refused: {0}")]
    Refused(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}
