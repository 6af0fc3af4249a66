use thiserror::Error;

use speckit_core::class::ClassError;
use speckit_core::identities::IdentityError;
use speckit_core::operators::OperatorError;
use speckit_core::oracle::OracleError;
use speckit_core::series::SeriesError;

/// Static errors, reported with the position where they were detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{line}:{col}: syntax error: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        line: usize,
        col: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("{line}:{col}: unknown name `{name}`")]
    UnknownName { line: usize, col: usize, name: String },
    #[error("{line}:{col}: type mismatch: expected {expected}, found {found}")]
    TypeMismatch {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("{line}:{col}: `{name}` is already defined")]
    DuplicateName { line: usize, col: usize, name: String },
}

/// Failure while evaluating one expression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error("`{expr}` is not a {expected}")]
    WrongKind { expected: &'static str, expr: String },
    #[error("{0} is not an integer")]
    NotAnInteger(String),
}

impl EvalError {
    pub fn is_cap_exceeded(&self) -> bool {
        match self {
            EvalError::Oracle(OracleError::CapExceeded { .. }) => true,
            EvalError::Identity(e) => e.is_cap_exceeded(),
            _ => false,
        }
    }
}

/// Evaluation failure located at a statement (numbered from 1).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("statement {statement}: {source}")]
pub struct RunError {
    pub statement: usize,
    #[source]
    pub source: EvalError,
}
