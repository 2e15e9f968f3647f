use thiserror::Error;

/// Errors raised by the library. Numerical failures of a flow run are not
/// errors; they are reported through [`crate::flow::RunStatus`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system {label}: {reason}")]
    UnsupportedRootSystem { label: String, reason: String },

    #[error("invalid group parameters for {group}: {reason}")]
    InvalidGroup { group: String, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("base points differ")]
    BasePointMismatch,

    #[error("vector is not horizontal (vertical norm {vertical_norm:.3e} exceeds {tol:.1e})")]
    NotHorizontal { vertical_norm: f64, tol: f64 },

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("model `{0}` has no global chart; flows need a coordinate model")]
    NoChart(String),

    #[error("invalid Lie data: {0}")]
    InvalidLieData(String),

    #[error("invalid loop: {0}")]
    InvalidLoop(String),

    #[error("invalid flow config: field `{field}`: {reason}")]
    InvalidConfig { field: String, reason: String },

    #[error("flow blew up at t = {t}")]
    BlowUp { t: f64 },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
