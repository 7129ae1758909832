//! Exact-arithmetic verification of hypergeometric identities.
//!
//! The crate verifies a family of summation, transformation and
//! product-reduction identities for generalized hypergeometric series over
//! exact rational arithmetic, with a configurable-precision numeric branch
//! for the one non-terminating unit-argument sum in the family.
//!
//! Layers, bottom up:
//! - [`rational`]: arbitrary-precision rationals, signed Pochhammer symbols
//! - [`poly`]: univariate polynomials over the rationals
//! - [`series`]: truncated formal power series with exact coefficients
//! - [`eval`]: pointwise evaluation of terminating hypergeometric sums
//! - [`bigfloat`] / [`numeric`]: fixed-precision values and the validated
//!   direct summation of non-terminating `3F2(1)`
//! - [`catalog`]: the identities compiled into data: schemas, validity
//!   predicates and side evaluators
//! - [`harness`]: parameter sweeps, comparison, reporting and shrinking
//! - [`config`] / [`sampler`]: sweep configuration files and deterministic
//!   rational sampling

pub mod bigfloat;
pub mod catalog;
pub mod config;
pub mod error;
pub mod eval;
pub mod harness;
pub mod poly;
pub mod rational;
pub mod sampler;
pub mod series;

pub mod numeric;

pub use error::{Error, Result};

/// Tool version reported by the CLI, the report metadata and the C API.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Version tag of the identity catalog's schema manifest.
pub const CATALOG_VERSION: &str = "1";
