use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),

    /// A scene that parses but violates an invariant or misses a block.
    #[error("inconsistent scene: {0}")]
    Scene(String),

    #[error(transparent)]
    Core(#[from] logfol::Error),
}
