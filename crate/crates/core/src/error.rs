use thiserror::Error;

use crate::zpoly::Var;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable mismatch: {left} vs {right}")]
    VarMismatch { left: Var, right: Var },

    #[error("unknown variable {0}")]
    UnknownVar(Var),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("division is not exact: {0}")]
    NotExact(String),

    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,

    #[error("operation needs a nonconstant polynomial")]
    ConstantPolynomial,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("polynomial is not monic: {0}")]
    NotMonic(String),

    #[error("degree budget exceeded: need degree {needed}, budget {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("construction check failed: {0}")]
    Construction(String),

    #[error("hypothesis {hypothesis} failed: {detail}")]
    HypothesisFailed { hypothesis: String, detail: String },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}
