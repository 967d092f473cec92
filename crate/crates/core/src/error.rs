use thiserror::Error;

/// Errors raised by parsers, validators and the individual tests.
///
/// Failing to prove diagrammatic reducibility is never an error; it is reported
/// through [`crate::Verdict`]. Errors are reserved for malformed input and
/// violated preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}:{column}: undeclared generator `{name}`")]
    UndeclaredGenerator {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("{line}:{column}: empty relator")]
    EmptyRelator { line: usize, column: usize },

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("undeclared vertex `{0}`")]
    UndeclaredVertex(String),

    #[error("generator index {index} out of range for an alphabet of size {size}")]
    GeneratorOutOfRange { index: usize, size: usize },

    #[error("position {position} out of range for a word of length {length}")]
    PositionOutOfRange { position: usize, length: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector is not orthogonal to the abelianization of relator {relator}")]
    NotOrthogonal { relator: usize },

    #[error("word uses more than one generator")]
    MultipleGenerators,

    #[error("strict constraint {constraint} has nonzero right-hand side")]
    StrictWithRhs { constraint: usize },

    #[error("strict constraints must be strictified before calling the solver")]
    StrictConstraint,

    #[error("point is not a member of the cloud")]
    PointNotInCloud,

    #[error("matrix has {columns} columns, exhaustive search is capped at {cap}")]
    CapExceeded { columns: usize, cap: usize },

    #[error("invalid block structure: {0}")]
    InvalidBlocks(String),

    #[error("relator has nonzero abelianization")]
    NonzeroAbelianization,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid rational `{0}`")]
    InvalidRational(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
