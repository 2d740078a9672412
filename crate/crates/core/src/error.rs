use thiserror::Error;

/// Errors raised while ingesting tables or evaluating rough-set measures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("duplicate object name {0}")]
    DuplicateObject(String),
    #[error("duplicate attribute name {0}")]
    DuplicateAttribute(String),
    #[error("ragged row {row}: expected {expected} cells, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("missing value at object {object}, column {column}")]
    MissingValue { object: String, column: String },
    #[error("unknown decision column {0}")]
    UnknownDecision(String),
    #[error("unknown attribute {0}")]
    UnknownAttribute(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("duplicate object {0} in partition")]
    PartitionDuplicate(String),
    #[error("object {0} is not covered by any block")]
    PartitionUncovered(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("object index {index} outside universe of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("universe size mismatch: expected {expected}, found {found}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("indiscernibility undefined for empty attribute set")]
    EmptyAttributeSet,
    #[error("{count} attributes exceed the exhaustive reduct cap of {cap}; use a smaller table or raise the cap")]
    TooManyAttributes { count: usize, cap: usize },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("class weight labels {weights:?} do not match decision labels {labels:?}")]
    ClassLabelMismatch {
        weights: Vec<String>,
        labels: Vec<String>,
    },
    #[error("infeasible search constraints: {0}")]
    Infeasible(String),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
