use thiserror::Error;

/// Crate-wide error type. The CLI maps each variant onto a stable exit code.
#[derive(Error, Debug)]
pub enum VfError {
    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("admissibility violated: {0}")]
    Admissibility(String),

    #[error("relativistic causality violated: {0}")]
    Causality(String),

    #[error("lift violation: {0}")]
    Lift(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("resolution cap exceeded: {0}")]
    Resolution(String),

    #[error("regularity budget exhausted: {0}")]
    Regularity(String),

    #[error("incompatible initial data: {0}")]
    Incompatible(String),

    #[error("stability (CFL) failure: {0}")]
    Stability(String),

    #[error("iteration diverged: {0}")]
    Divergence(String),

    #[error("constraint margin too small: {0}")]
    Margin(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

impl VfError {
    pub fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        VfError::Config { key: key.into(), message: message.into() }
    }

    /// Process exit code for the CLI: 0 success, 2 config, 3 physics or
    /// admissibility, 4 divergence, 5 i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            VfError::Config { .. } | VfError::Parameter(_) | VfError::Resolution(_) => 2,
            VfError::Admissibility(_)
            | VfError::Causality(_)
            | VfError::Lift(_)
            | VfError::Regularity(_)
            | VfError::Incompatible(_)
            | VfError::Stability(_)
            | VfError::Margin(_) => 3,
            VfError::Divergence(_) => 4,
            VfError::Io(_) | VfError::Serde(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, VfError>;
