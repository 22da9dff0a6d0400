use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] descent_core::Error),
    #[error("unknown suite `{0}`; expected one of {suites}", suites = crate::verify::Suite::NAMES.join(", "))]
    UnknownSuite(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("{label} has rank 7; pass --allow-rank7 to build it")]
    Rank7Disabled { label: String },
    #[error("unknown output format `{0}` (text, json or csv)")]
    UnknownFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
