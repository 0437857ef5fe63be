use thiserror::Error;

use crate::poly::Var;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("substitution bindings are cyclic (through {0})")]
    CyclicSubstitution(Var),

    #[error("division is not exact: {dividend} / {divisor}")]
    InexactDivision { dividend: String, divisor: String },

    #[error("variable {0} has no value at the evaluation point")]
    UnboundVariable(Var),

    #[error("invalid tensor slot {slot} for an element of arity {arity}")]
    InvalidSlot { slot: usize, arity: usize },

    #[error("invalid Koszul row index {index} (factorization has {rows} rows)")]
    InvalidRow { index: usize, rows: usize },

    #[error("row {row} cannot exclude {var}: {reason}")]
    NotExcludable { row: usize, var: Var, reason: String },

    #[error("web has no resolution provenance")]
    MissingProvenance,

    #[error("invalid web: {0}")]
    InvalidWeb(String),

    #[error("invalid link diagram: {0}")]
    InvalidDiagram(String),

    #[error("resolution words {0} and {1} are not adjacent in the cube")]
    NotAdjacent(String, String),

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("closed web homology could not be computed: {0}")]
    ExclusionIncomplete(String),

    #[error("differential does not square to zero at degree {0}")]
    NonZeroSquare(i32),

    #[error("unknown specialization {0:?}")]
    UnknownSpecialization(String),

    #[error("specialization has a double root; the distinct-root report does not apply")]
    DoubleRoot,

    #[error("degree formula mismatch: expected {expected:?}, computed {computed:?}")]
    DegreeMismatch {
        expected: Vec<(i32, usize)>,
        computed: Vec<(i32, usize)>,
    },

    #[error("proof replay failed at step {step} ({name}): {reason}")]
    Replay {
        step: usize,
        name: String,
        reason: String,
    },
}
