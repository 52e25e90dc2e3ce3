use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid CSR matrix: {0}")]
    InvalidCsr(String),

    #[error("row {row} has a zero or missing diagonal entry")]
    ZeroDiagonal { row: usize },

    #[error("matrix is not structurally symmetric: entry ({row}, {col}) has no transpose")]
    NotSymmetric { row: usize, col: usize },

    #[error("smooth vector vanishes on aggregate {aggregate}")]
    ZeroAggregate { aggregate: usize },

    #[error("prolongator row {row} has {nnz} nonzeros, expected exactly one")]
    NotPiecewiseConstant { row: usize, nnz: usize },

    #[error("graph with {n} vertices exceeds the exhaustive matching limit of {max}")]
    GraphTooLarge { n: usize, max: usize },

    #[error("level {level} out of range for a hierarchy with {levels} levels")]
    LevelOutOfRange { level: usize, levels: usize },

    #[error("PCG breakdown at iteration {iteration}: {reason}")]
    Breakdown { iteration: usize, reason: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn dim(op: &'static str, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            op,
            expected,
            found,
        }
    }
}
