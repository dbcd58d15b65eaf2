use thiserror::Error;

/// Errors raised by the table-based constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A mathematical hypothesis required by an operation does not hold.
    /// `hypothesis` is a short machine-stable name such as `"p > n+1"`.
    #[error("hypothesis `{hypothesis}` violated: {detail}")]
    Hypothesis {
        hypothesis: &'static str,
        detail: String,
    },

    /// Malformed input: wrong table shape, out-of-range entries, mismatched groups.
    #[error("structural error: {0}")]
    Structural(String),

    /// An argument lies outside the domain of the operation.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("{value} is not invertible modulo {modulus}")]
    NonInvertible { value: u64, modulus: u64 },

    /// An axiom check failed on data that was supposed to satisfy it.
    #[error("axiom `{identity}` fails at {witness:?}")]
    Axiom {
        identity: &'static str,
        witness: Vec<u32>,
    },

    #[error("table of order {order} exceeds the configured cap {cap}")]
    TableCap { order: u64, cap: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    /// Something that the theory guarantees did not happen.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn hypothesis(hypothesis: &'static str, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            hypothesis,
            detail: detail.into(),
        }
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    /// The hypothesis name, when this is a hypothesis error.
    pub fn hypothesis_name(&self) -> Option<&'static str> {
        match self {
            Error::Hypothesis { hypothesis, .. } => Some(hypothesis),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
