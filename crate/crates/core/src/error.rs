use thiserror::Error;

/// Errors raised by constructions, checkers and the command-line surface.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: String, limit: usize },

    #[error("search budget of {limit} node expansions exhausted")]
    Budget { limit: u64 },

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: unknown atom label `{label}`")]
    UnknownLabel { line: usize, label: String },

    #[error("line {line}: duplicate declaration `{item}`")]
    Duplicate { line: usize, item: String },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("not a lattice: elements {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),

    #[error("not atomistic: element {element} is not the join of the atoms below it")]
    NotAtomistic { element: usize },

    #[error("random space n={n} density={density} seed={seed}: no separating relation after {attempts} attempts")]
    CouldNotSeparate {
        n: usize,
        density: f64,
        seed: u64,
        attempts: usize,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by size limits rather than malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::Budget { .. })
    }
}
