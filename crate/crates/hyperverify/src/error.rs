//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by evaluators, the catalog and the sweep harness.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A Pochhammer symbol or series coefficient would divide by zero.
    /// `what` names the offending parameter, `index` the first bad index.
    #[error("pole: {what} vanishes at index {index}")]
    Pole { what: String, index: i64 },

    /// Exact summation was requested for a series with no non-positive
    /// integer top parameter.
    #[error("series does not terminate: no non-positive integer top parameter")]
    NotTerminating,

    /// Two series of different truncation orders were combined.
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    /// The unit-argument sum converges too slowly for direct summation.
    #[error("convergence too slow: {0}")]
    ConvergenceTooSlow(String),

    /// The rounding-error budget was exhausted before the tail bound was met.
    #[error("precision insufficient: {0}")]
    PrecisionInsufficient(String),

    /// An instance violates the hypotheses of its identity.
    #[error("invalid hypothesis: {0}")]
    InvalidHypothesis(String),

    /// A parameter list does not fit the in-scope series shapes.
    #[error("invalid series spec: {0}")]
    InvalidSpec(String),

    /// Malformed sweep configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Malformed textual input (rational, decimal, tag, ...).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
