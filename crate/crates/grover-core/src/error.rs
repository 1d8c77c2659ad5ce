//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Qubit count outside the supported range `1..=MAX_QUBITS`.
    #[error("qubit count {n} outside supported range 1..={max}")]
    QubitCount { n: u32, max: u32 },

    /// A state and a problem (or two states) disagree on register width.
    #[error("register size mismatch: {left} vs {right} qubits")]
    SizeMismatch { left: u32, right: u32 },

    /// An index lies outside the search space `0..2^n`.
    #[error("index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: u64, n: u32 },

    /// An amplitude vector's length does not match the register width.
    #[error("amplitude vector has length {actual}, expected {expected}")]
    AmplitudeLength { expected: usize, actual: usize },

    /// Duplicate index in an explicit marked set.
    #[error("duplicate marked index {index}")]
    DuplicateIndex { index: u64 },

    /// Angle-based formulas are undefined with no matches present.
    #[error("match count is zero: rotation angle undefined")]
    NoMatches,

    /// Match count exceeds the list size.
    #[error("match count {matches} exceeds list size {size}")]
    TooManyMatches { matches: u64, size: u64 },

    /// `1/sin(2θ)` diverges at M = N.
    #[error("m_G diverges: sin(2θ) = 0 when every item matches")]
    Divergence,

    /// The unknown-match-count cost model only applies for M ≤ 3N/4.
    #[error("cost model invalid for {matches}/{size} > 3/4; use classical sampling")]
    OutOfValidity { matches: u64, size: u64 },

    /// Growth factor for the unknown-match-count loop must lie in (1, 4/3].
    #[error("growth factor {lambda} outside (1, 4/3]")]
    InvalidGrowthFactor { lambda: f64 },

    /// DIMACS input could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Sweep grids need at least two points.
    #[error("grid size {grid} too small; need at least 2")]
    GridTooSmall { grid: u32 },

    /// Table rows are defined for 2 <= n_min <= n_max within the exact-sum cap.
    #[error("table range {n_min}..={n_max} invalid; need 2 <= n_min <= n_max <= 20")]
    TableRange { n_min: u32, n_max: u32 },

    /// The workspace qubit decoupled from its expected tensor factor.
    #[error("ancilla register deviates from (|0>-|1>)/sqrt(2) by {residual:e}")]
    AncillaResidual { residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
