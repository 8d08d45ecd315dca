use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {left} variables vs {right} variables")]
    RingMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("jet order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("invalid order {order}: {reason}")]
    BadOrder { order: usize, reason: String },

    #[error("empty scheme: the ideal contains 1")]
    EmptyScheme,

    #[error("point {point} is not on the variety (generator {generator} evaluates to {value})")]
    NotOnVariety {
        point: String,
        generator: usize,
        value: String,
    },

    #[error("point {0} is not a singular point")]
    NotSingular(String),

    #[error("degree violation: candidate {candidate} has degree {degree} > {bound}")]
    DegreeViolation {
        candidate: String,
        degree: i64,
        bound: usize,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
