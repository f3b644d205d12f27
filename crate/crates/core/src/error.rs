use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid multiway cut: {0}")]
    InvalidCut(String),

    #[error("enumeration needs {required} states but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("no feasible set: {0}")]
    Infeasible(String),

    #[error("exact enumeration limited to {limit} vertices, got {n}")]
    SizeLimit { n: usize, limit: usize },

    #[error("multiplicative weights loop exceeded {cap} iterations")]
    IterationCap { cap: usize },

    #[error("collection does not cover the vertex set (vertex {0} missing)")]
    UnionNotV(usize),

    #[error("unsupported exponent: {0}")]
    UnsupportedP(String),

    #[error("invalid exponent: {0}")]
    InvalidP(String),

    #[error("bisection instances need an even vertex count, got {0}")]
    OddN(usize),

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("infeasible fractional assignment: {0}")]
    InfeasibleAssignment(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Infeasible(_) | Error::InfeasibleAssignment(_) => 3,
            Error::BudgetExceeded { .. } | Error::SizeLimit { .. } => 4,
            Error::UnsupportedP(_) => 5,
            _ => 1,
        }
    }
}
