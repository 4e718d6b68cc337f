use thiserror::Error;

/// Errors produced by grid construction, the solver kernels and the run harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported dimension {0} (only 2 and 3 are implemented)")]
    UnsupportedDimension(usize),

    #[error("invalid domain: {0}")]
    BadDomain(String),

    #[error("finest level {finest} too small for dimension {dim} (need {min})")]
    LevelTooSmall { dim: usize, finest: usize, min: usize },

    #[error("cell count {0} must be even for window-based prolongation")]
    OddCellCount(usize),

    #[error("index {index} out of range on axis {axis} ({cells} cells)")]
    IndexOutOfRange { axis: usize, index: usize, cells: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("prolongation target must be at least as fine as the source on every axis ({0})")]
    TargetCoarser(String),

    #[error("interpolation offset {0} outside [0.5, 1.5)")]
    OffsetOutOfRange(f64),

    #[error("all wavespeed bounds are zero; time step undefined")]
    ZeroWavespeeds,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value detected after step {step} (t = {t:.6e})")]
    NonFinite { step: usize, t: f64 },

    #[error("unknown problem '{0}'")]
    UnknownProblem(String),

    #[error("no exact or reference solution available for '{0}' at t = {1}")]
    MissingReference(String, f64),

    #[error("component set mismatch: {0}")]
    ComponentMismatch(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed report CSV: {0}")]
    CsvParse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
