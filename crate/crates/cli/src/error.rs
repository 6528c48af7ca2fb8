use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad or missing configuration; exit status 2.
    #[error("configuration error: {0}")]
    Config(String),
    /// Failure while running an experiment or writing output; exit status 1.
    #[error(transparent)]
    Runtime(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Runtime(_) => 1,
        }
    }
}

impl From<srlab_core::Error> for CliError {
    fn from(e: srlab_core::Error) -> Self {
        Self::Runtime(e.into())
    }
}
