use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("zero has no multiplicative inverse")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: operands live over different fields")]
    FieldMismatch,
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("integer overflow computing {0}")]
    Overflow(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("subspace is not a hyperplane of the ambient space")]
    NotHyperplane,
    #[error("subspace is not contained in the polarity's hyperplane")]
    NotInHyperplane,
    #[error("bilinear form is {0}")]
    BadForm(&'static str),
    #[error("semilinear map does not stabilize the hyperplane")]
    NotStabilizing,
    #[error("graph is {0}")]
    GraphShape(&'static str),
    #[error("design has no blocks")]
    EmptyDesign,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
