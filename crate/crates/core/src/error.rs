use std::fmt;

use thiserror::Error;

/// A text-format error with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} on {n_vars} variables exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        n_vars: usize,
        cap: usize,
    },
    #[error("table for {n_vars} variables must have 2^{n_vars} entries, got {len}")]
    TableLength { n_vars: usize, len: usize },
    #[error("expected {expected} variables, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("assignments overlap on variable {var}")]
    OverlappingSupport { var: usize },
    #[error("invalid branching program: {0}")]
    InvalidProgram(String),
    #[error("formula is not read-once: variable {var} occurs more than once")]
    NotReadOnce { var: usize },
    #[error("operation requires a total truth table")]
    NotTotal,
    #[error("program is not once-appearance: variable {var} labels several nodes")]
    NotOabp { var: usize },
    #[error("program disagrees with the target on row {row}")]
    SemanticMismatch { row: usize },
    #[error("invalid BPIS instance: {0}")]
    InvalidInstance(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{0}")]
    GammaDomain(String),
    #[error("invalid (3,4)-CNF: {0}")]
    Cnf(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Renders a list of items as `a, b, c`.
pub(crate) struct Joined<'a, T>(pub &'a [T]);

impl<T: fmt::Display> fmt::Display for Joined<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}
