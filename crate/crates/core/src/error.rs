use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("dimension {dim} out of range (valid: {min}..={max})")]
    Dimension { dim: usize, min: usize, max: usize },

    #[error("right-hand side column {column} is not in the column span")]
    NotInSpan { column: usize },

    #[error("matrix does not have full column rank (rank {rank} < {cols} columns)")]
    NotFullRank { rank: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("classification inconsistent in dimension {dim}: {detail}")]
    Classification { dim: usize, detail: String },

    #[error("decomposition does not match the network: {0}")]
    InvalidDecomposition(String),

    #[error("invalid filtration{}: {msg}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    InvalidFiltration { line: Option<usize>, msg: String },

    #[error("oriented solution has an even denominator in dimension {dim}; mod-2 reduction undefined")]
    OrientedReductionUndefined { dim: usize },

    #[error("unknown format: {0}")]
    Format(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
