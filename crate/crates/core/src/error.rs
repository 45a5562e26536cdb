use thiserror::Error;

use crate::ratmath::Polynomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("not poly-rational up to exponent bound {max_ell}: stuck on factor {witness}")]
    NotPolyRational { witness: Polynomial, max_ell: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("arity error: {0}")]
    Arity(String),

    #[error("star undefined: child term 0 is {value}, expected 0")]
    StarUndefined { value: String },

    #[error("fragment error: {0}")]
    Fragment(String),

    #[error("budget exceeded: more than {cap} {what}")]
    BudgetExceeded { what: &'static str, cap: usize },

    #[error("exponentially ambiguous: state {state} lies on two distinct cycles")]
    ExponentialAmbiguity { state: usize },

    #[error("class mismatch: expected {expected}, found {found}")]
    ClassMismatch { expected: String, found: String },

    #[error("output function undefined at state {state}")]
    OutputUndefined { state: usize },

    #[error("not copyless: register {register} used more than once in the substitution of state {state}")]
    NotCopyless { state: usize, register: String },

    #[error("no normal-form register order: dependency cycle {}", .cycle.join(" -> "))]
    NoNormalFormOrder { cycle: Vec<String> },

    #[error("register value did not stabilise: {0}")]
    Stabilization(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
