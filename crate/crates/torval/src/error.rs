use thiserror::Error;

/// Crate-wide error type.
///
/// The three variants mirror the CLI exit-code contract: `Parse` and
/// `Validation` are input problems (exit 1), `Check` is a computational
/// assertion that failed on otherwise well-formed data (exit 2).
#[derive(Debug, Error)]
pub enum Error {
    /// The input file could not be read or decoded at all.
    #[error("parse error: {0}")]
    Parse(String),

    /// The input decoded but violates structural invariants. Every violated
    /// invariant is listed, not just the first one found.
    #[error("validation error: {}", .0.join("; "))]
    Validation(Vec<String>),

    /// A computation on valid data produced an inconsistent result
    /// (non-integral class number, divergent value routes, ...).
    #[error("check failed: {0}")]
    Check(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(vec![msg.into()])
    }

    /// Exit code for the CLI contract: 1 for input problems, 2 for failed
    /// computational assertions.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Validation(_) => 1,
            Error::Check(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
