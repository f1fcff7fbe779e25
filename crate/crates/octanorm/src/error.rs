use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Input outside an operation's domain (non-finite coordinates, p < 1, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A representation failed its structural invariants (malformed polygon,
    /// bad weights, degenerate edge).
    #[error("validation error: {0}")]
    Validation(String),

    /// An operation's precondition does not hold for the given arguments.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A vector's tree shape does not match its space expression.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Mini-language parse failure; `pos` is a byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
