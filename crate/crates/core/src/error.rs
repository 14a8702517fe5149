use thiserror::Error;

use crate::model::Label;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An assignment does not match the model it is evaluated against.
    #[error("assignment does not conform to model: {0}")]
    Conformance(#[from] ConformanceError),

    #[error("invalid term ({i}, {j}): value {value} is not finite")]
    NonFiniteTerm { i: Label, j: Label, value: f64 },

    /// A malformed line in a coordinate-format problem file.
    #[error("line {line}: {reason}: {text:?}")]
    Parse {
        line: usize,
        text: String,
        reason: String,
    },

    #[error("solver {0:?} is already registered")]
    DuplicateSolver(String),

    #[error("solver {solver:?} declares argument {arg:?} more than once")]
    DuplicateArgument { solver: String, arg: String },

    #[error("{0}")]
    Usage(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("model has {num_variables} variables; exhaustive search supports at most 64")]
    Capacity { num_variables: usize },

    #[error("sample set is empty")]
    EmptySampleSet,

    #[error("{0}")]
    Domain(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConformanceError {
    #[error("expected {expected} values, found {found}")]
    Length { expected: usize, found: usize },

    #[error("variable {label} has value {value}, outside the vartype domain")]
    OutOfDomain { label: Label, value: i8 },

    #[error("variable {0} is not part of the model")]
    UnknownLabel(Label),

    #[error("variable {0} has no value")]
    MissingLabel(Label),
}
