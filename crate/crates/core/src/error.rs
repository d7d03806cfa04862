use thiserror::Error;

use crate::exactalg::ModularError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("linear form has only zero coefficients")]
    ZeroForm,

    #[error("duplicate hyperplane {0}")]
    DuplicateHyperplane(String),

    #[error("expected {expected} coefficients, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unknown family '{0}'")]
    UnknownFamily(String),

    #[error("family {family}: {msg}")]
    FamilyParams { family: String, msg: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no certified generic line found after {0} attempts")]
    GenericExhausted(usize),

    #[error("internal consistency violation: {0}")]
    Consistency(String),

    #[error(transparent)]
    Modular(#[from] ModularError),
}

impl Error {
    pub(crate) fn params(family: &str, msg: impl Into<String>) -> Self {
        Error::FamilyParams { family: family.to_string(), msg: msg.into() }
    }

    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}
