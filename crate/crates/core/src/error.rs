use thiserror::Error;

use crate::formula::Var;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable {var} out of range (formula has {num_vars} variables)")]
    VarOutOfRange { var: u32, num_vars: usize },

    #[error("variable index must be positive")]
    ZeroVariable,

    #[error("tautological clause has no falsifying cube")]
    Tautology,

    #[error("invalid step: {0}")]
    InvalidStep(String),

    #[error("step {index}: {reason}")]
    StepFailed { index: usize, reason: String },

    #[error("no occurrence with id {0}")]
    NoSuchOccurrence(usize),

    #[error("variable {0} is already fixed in this clause")]
    VariablePresent(Var),

    #[error("too many variables for a dense table ({num_vars} > {limit})")]
    TooManyVars { num_vars: usize, limit: usize },

    #[error("mismatched variable counts ({left} vs {right})")]
    NumVarsMismatch { left: usize, right: usize },

    #[error("pointwise value {value} at assignment index {index} is not a nonnegative integer")]
    NegativeValue { index: usize, value: i64 },

    #[error("graph: {0}")]
    Graph(String),

    #[error("tree refutation: {0}")]
    Tree(String),

    #[error("log does not derive the empty clause")]
    NotRefuted,

    #[error("formula is satisfiable")]
    Satisfiable,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("game protocol: {0}")]
    Protocol(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
