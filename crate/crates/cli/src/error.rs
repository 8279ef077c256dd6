use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("solver failure: {0}")]
    Solver(qdeform::Error),

    #[error("level n_r = {n_r} not found: the well holds {available} level(s)")]
    LevelNotFound { n_r: usize, available: usize },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("cannot write `{path}`: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit status: 2 for bad input, 3 for solver trouble, 4 for a
    /// missing level.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } | CliError::Output { .. } => 2,
            CliError::Solver(_) | CliError::Verification(_) => 3,
            CliError::LevelNotFound { .. } => 4,
        }
    }
}

impl From<qdeform::Error> for CliError {
    fn from(e: qdeform::Error) -> Self {
        match e {
            qdeform::Error::InvalidParameter { name, reason } => CliError::config(name, reason),
            qdeform::Error::EmptyWindow { .. } => CliError::config("c_spin", e.to_string()),
            other => CliError::Solver(other),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
