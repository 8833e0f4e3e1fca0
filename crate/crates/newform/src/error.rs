use num_complex::Complex64;
use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported rank: {0}")]
    UnsupportedRank(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("field/group mismatch: {0}")]
    Mismatch(String),
    #[error("pole at {z}")]
    Pole { z: Complex64 },
    #[error("pole of component {index} at s = {s}")]
    ComponentPole { index: usize, s: Complex64 },
    #[error("outside convergence region: {0}")]
    Convergence(String),
    #[error("quadrature did not converge: estimate {estimate:e} above tolerance {tolerance:e}")]
    NonConvergence { estimate: f64, tolerance: f64 },
    #[error("dimension too large: {0}")]
    TooLarge(String),
    #[error("node budget exceeded: {needed} > {budget}")]
    Budget { needed: u64, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
