use gkz_core::Error as CoreError;

/// Errors surfaced by the command-line driver.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

impl CliError {
    /// 1 for rejected input, 2 for a broken internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::Internal(_)) | CliError::Consistency(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 1);
        assert_eq!(CliError::Core(CoreError::NotHomogeneous).exit_code(), 1);
        assert_eq!(CliError::Core(CoreError::Internal("x".into())).exit_code(), 2);
        assert_eq!(CliError::Consistency("x".into()).exit_code(), 2);
    }
}
