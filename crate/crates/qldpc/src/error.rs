use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("alist line {line}: {message}")]
    Alist { line: usize, message: String },

    /// A CSS code failed one of its structural invariants.
    #[error("code violates {invariant}: {detail}")]
    CodeInvariant {
        invariant: &'static str,
        detail: String,
    },

    #[error("invalid code construction: {0}")]
    InvalidSpec(String),

    #[error("invalid code descriptor: {0}")]
    Descriptor(String),

    #[error("invalid decoder configuration: {0}")]
    Config(String),

    #[error("invalid noise model: {0}")]
    Noise(String),

    #[error("enumeration too large: {0}")]
    Infeasible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
