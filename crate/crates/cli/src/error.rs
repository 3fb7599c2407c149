//! CLI error type with stable exit codes and machine-readable tokens.
//!
//! Exit codes: 0 success, 2 usage, 3 I/O, 4 numerical, 5 data shape. The
//! last stderr line of every failing invocation is `error-code: <token>`.

use std::path::PathBuf;

use dmdbg_core::Error as CoreError;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("I/O error on {path:?}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error("report serialization failed: {0}")]
    Report(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Report(_) => 3,
            CliError::Core(core) => match core {
                CoreError::Io { .. } | CoreError::Image { .. } => 3,
                CoreError::DegenerateInput(_)
                | CoreError::Numerical(_)
                | CoreError::NoBackgroundMode
                | CoreError::NonFinite(_) => 4,
                CoreError::SequenceTooShort { .. } | CoreError::DimensionMismatch(_) => 5,
                CoreError::InvalidParameter(_) => 2,
            },
        }
    }

    /// Machine-readable token printed on the last stderr line.
    pub fn token(&self) -> &'static str {
        match self.exit_code() {
            2 => "usage",
            3 => "io",
            4 => "numerical",
            _ => "data-shape",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct_per_failure_class() {
        let short = CliError::Core(CoreError::SequenceTooShort { needed: 2, got: 1 });
        let degenerate = CliError::Core(CoreError::DegenerateInput("x".into()));
        let unreadable = CliError::Core(CoreError::Io {
            path: "frame.png".into(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "gone"),
        });
        assert_eq!(short.exit_code(), 5);
        assert_eq!(degenerate.exit_code(), 4);
        assert_eq!(unreadable.exit_code(), 3);
        assert_eq!(short.token(), "data-shape");
        assert_eq!(degenerate.token(), "numerical");
        assert_eq!(unreadable.token(), "io");
    }
}
