use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),
    #[error("{what} exceeds budget {budget}")]
    Budget { what: String, budget: u64 },
    #[error("arity mismatch: word has {expected} variables, got {got} arguments")]
    Arity { expected: usize, got: usize },
    #[error("degenerate law: {0}")]
    DegenerateLaw(String),
    #[error("search exhausted: {0}")]
    Exhausted(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
