//! Exact sparse multivariate polynomials over the rationals.

pub mod limits;
mod parse;
mod poly;
mod rational;
mod subst;

use thiserror::Error;

pub use parse::{parse_polynomial, ContextSpec};
pub use poly::{Context, ExponentVector, SparsePolynomial};
pub use rational::{ParseRationalError, Rational};
pub use subst::{substitute, Substitution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}`{}", offset.map(|o| format!(" at byte {o}")).unwrap_or_default())]
    UnknownVariable { name: String, offset: Option<usize> },
    #[error("variable `{0}` has no image and is absent from the target context")]
    UnassignedVariable(String),
    #[error("context mismatch: {left:?} vs {right:?}")]
    ContextMismatch { left: Vec<String>, right: Vec<String> },
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("term `{term}` has degree {degree} below the base degree {base}")]
    DegreeBelowBase { degree: u64, base: u32, term: String },
    #[error("{0}: zero polynomial")]
    ZeroPolynomial(&'static str),
    #[error("no value assigned to `{0}`")]
    MissingAssignment(String),
    #[error("term count exceeds the cap of {cap}")]
    TermCapExceeded { cap: usize },
}

impl AlgebraError {
    pub(crate) fn unknown(name: &str) -> Self {
        AlgebraError::UnknownVariable { name: name.to_string(), offset: None }
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            AlgebraError::Syntax { .. } => "SYNTAX_ERROR",
            AlgebraError::UnknownVariable { .. } => "UNKNOWN_VARIABLE",
            AlgebraError::UnassignedVariable(_) => "UNASSIGNED_VARIABLE",
            AlgebraError::ContextMismatch { .. } => "CONTEXT_MISMATCH",
            AlgebraError::DuplicateVariable(_) => "DUPLICATE_VARIABLE",
            AlgebraError::InvalidVariableName(_) => "INVALID_VARIABLE_NAME",
            AlgebraError::ArityMismatch { .. } => "ARITY_MISMATCH",
            AlgebraError::DegreeBelowBase { .. } => "DEGREE_BELOW_BASE",
            AlgebraError::ZeroPolynomial(_) => "ZERO_POLYNOMIAL",
            AlgebraError::MissingAssignment(_) => "MISSING_ASSIGNMENT",
            AlgebraError::TermCapExceeded { .. } => "TERM_CAP_EXCEEDED",
        }
    }
}
