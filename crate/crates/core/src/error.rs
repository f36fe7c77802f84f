use thiserror::Error;

/// Failure raised by a numerical operation. `op` names the module and
/// operation (`"matching::b_matrix"`), which the CLI reports verbatim.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("{op}: domain error: {msg}")]
    Domain { op: &'static str, msg: String },

    #[error("{op}: precondition violated: {msg}")]
    Precondition { op: &'static str, msg: String },

    #[error("{op}: matrix is singular")]
    Singular { op: &'static str },

    #[error("{op}: matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    Indefinite { op: &'static str, min_eigenvalue: f64 },

    #[error("{op}: synthesis failed: {msg}")]
    Synthesis { op: &'static str, msg: String },
}

impl Error {
    pub fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    pub fn precondition(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Precondition { op, msg: msg.into() }
    }

    /// The `module::operation` that failed.
    pub fn operation(&self) -> &'static str {
        match self {
            Error::Domain { op, .. }
            | Error::Precondition { op, .. }
            | Error::Singular { op }
            | Error::Indefinite { op, .. }
            | Error::Synthesis { op, .. } => op,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
