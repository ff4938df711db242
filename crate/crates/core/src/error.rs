use num_complex::Complex64;
use thiserror::Error;

use crate::lattice::MultiIndex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} is out of range (expected 1..=16)")]
    DimensionOutOfRange(usize),

    #[error("truncation window has {0} nodes, more than 2^31")]
    WindowTooLarge(u128),

    #[error("length mismatch: expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("bandwidth components must be positive and finite, got {0}")]
    InvalidBandwidth(f64),

    #[error("invalid multi-index: {0}")]
    InvalidMultiIndex(String),

    #[error(
        "quadrature did not converge at z = {z}: finest refinements differ by {rel:.3e} (relative)"
    )]
    Quadrature { z: Complex64, rel: f64 },

    #[error("{method} needs a lattice with theta = {expected}, sample set has theta = {got}")]
    WrongLattice {
        method: &'static str,
        expected: u8,
        got: u8,
    },

    #[error("{method} needs channel {k}, which is absent from the sample set")]
    MissingChannel { method: &'static str, k: MultiIndex },

    #[error("{method} does not accept channel {k}")]
    UnexpectedChannel { method: &'static str, k: MultiIndex },

    #[error("channel {k} has no record at node {m:?}")]
    MissingRecord { k: MultiIndex, m: Vec<i64> },

    #[error("{method} is defined for dimension {expected}, sample set has dimension {got}")]
    WrongDimension {
        method: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("evaluation grid is empty")]
    EmptyGrid,

    #[error("invalid exponent {0}")]
    InvalidExponent(f64),

    #[error("function has no known sup norm")]
    MissingSupNorm,

    #[error("invalid sample record: {0}")]
    InvalidRecord(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
