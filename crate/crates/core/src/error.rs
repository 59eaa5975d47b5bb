//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid argument: bad dimensions, mismatched contexts, out-of-range
    /// parameters, values violating a type invariant.
    #[error("input error: {0}")]
    Input(String),

    /// Malformed polynomial or operator text.
    #[error("parse error: {0}")]
    Parse(String),

    /// Exact cofactor expansion is only provided for small matrices.
    #[error("unsupported matrix size: {0}")]
    UnsupportedSize(String),

    /// The completion algorithm exceeded its degree cap.
    #[error("degree cap {cap} exceeded: S-polynomial of degree {degree}")]
    DegreeCap { cap: u32, degree: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
