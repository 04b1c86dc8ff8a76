use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value for {0}")]
    NonFinite(&'static str),

    #[error("measurement strength K = {0} outside [0, 1]")]
    StrengthOutOfRange(f64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("{what} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("grid for {0} is not strictly increasing")]
    UnsortedGrid(&'static str),

    #[error("query ({theta1}, {theta2}) rad lies outside the calibration grid")]
    OutsideGrid { theta1: f64, theta2: f64 },

    #[error("count table has no events")]
    NoEvents,

    #[error("bootstrap needs at least 2 replicas, got {0}")]
    TooFewReplicas(usize),

    #[error("bootstrap replica {replica} drew all-zero counts {attempts} times")]
    DegenerateReplica { replica: usize, attempts: usize },

    #[error("post-selection probability is zero")]
    ZeroPostselection,

    #[error("cannot balance the gate: {0}")]
    Rescaling(&'static str),

    #[error("counts were taken at K = {counts} but the calibration is for K = {calibration}")]
    StrengthMismatch { counts: f64, calibration: f64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: row {row}, field `{field}`: {message}")]
    Schema {
        path: PathBuf,
        row: usize,
        field: String,
        message: String,
    },

    #[error("configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn schema(
        path: impl Into<PathBuf>,
        row: usize,
        field: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Error::Schema {
            path: path.into(),
            row,
            field: field.into(),
            message: message.into(),
        }
    }
}
