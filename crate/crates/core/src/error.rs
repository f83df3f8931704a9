use thiserror::Error;

use crate::quaternion::Quaternion;

/// Errors raised by the numerical routines.
///
/// Every variant describes a violated precondition. Principled negative
/// outcomes (a matrix that is not PSD, a series that is not contractive)
/// are reported as values, never as errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate conjugacy class: {0} is real")]
    DegenerateClass(Quaternion),

    #[error("points must be pairwise distinct and equivalent: {0}")]
    NotEquivalent(String),

    #[error("Stein equation is not uniquely solvable: |a||b| = {0} >= 1")]
    SteinDomain(f64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: asymmetry {asymmetry:e} exceeds {allowed:e}")]
    NotHermitian { asymmetry: f64, allowed: f64 },

    #[error("point {index} lies outside the open unit ball (|z| = {modulus})")]
    OutsideBall { index: usize, modulus: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("evaluation failed at {point}: {message}")]
    Evaluation { point: Quaternion, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
