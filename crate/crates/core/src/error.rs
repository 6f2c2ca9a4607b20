use thiserror::Error;

/// Errors raised by machine construction, loading and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid machine:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),

    #[error("symbol `{symbol}` is not in the input alphabet")]
    InputSymbol { symbol: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),

    #[error("golden file `{path}` is missing")]
    MissingGolden { path: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
