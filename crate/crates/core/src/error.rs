use thiserror::Error;

/// Errors raised by the algebra, dynamics and numeric layers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("polynomials live in different rings: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },

    #[error("{0} is undefined for the zero polynomial")]
    ZeroPolynomial(&'static str),

    #[error("divisor list contains the zero polynomial at index {0}")]
    ZeroDivisor(usize),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid variable set: {0}")]
    InvalidVarSet(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("division is not exact")]
    InexactDivision,

    #[error("reduction budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },

    #[error("order {order} cannot eliminate down to {keep:?}")]
    NotEliminationOrder { order: String, keep: Vec<String> },

    #[error("variable `{0}` occurs in neither polynomial")]
    VariableAbsent(String),

    #[error("pole: |u| = {0:e} is below the threshold")]
    Pole(f64),

    #[error("root finder did not converge after {sweeps} sweeps (last step {last_step:e})")]
    Convergence {
        sweeps: usize,
        last_step: f64,
        partial: Vec<num_complex::Complex64>,
    },

    #[error("data integrity: {0}")]
    DataIntegrity(String),

    #[error("lifting failed: {0}")]
    LiftFailure(String),

    #[error("{phase}: {source}")]
    Phase { phase: String, source: Box<Error> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// The underlying error, looking through phase tags.
    pub fn root(&self) -> &Error {
        match self {
            Error::Phase { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
