use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    /// A factorial ratio did not divide exactly. For the degree formulas this
    /// can only mean a transcription bug.
    #[error("NonIntegralRatio: {0} is not an integer")]
    NonIntegralRatio(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("SyntaxError at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("InvalidParams: {0}")]
    InvalidParams(String),
    #[error("EmptyProduct: a space needs at least one factor")]
    EmptyProduct,
    #[error("Unsupported: exceptional space {0} has no degree formula")]
    Exceptional(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefinementError {
    #[error("refinements line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("refinements line {line}: {message}")]
    Contradiction { line: usize, message: String },
    #[error("cannot read refinements file {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("ShapeTooLarge: {rows}x{cols} has more than {limit} cells for exhaustive enumeration")]
    ShapeTooLarge { rows: u32, cols: u32, limit: u32 },
    #[error("InvalidShape: rectangles need at least one row and one column")]
    EmptyShape,
}

/// Crate-wide error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Refinement(#[from] RefinementError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
