//! Error type shared by the decomposition, imaging, and metrics modules.

use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The operation needs more frames (or snapshot columns) than it got.
    #[error("sequence too short: need at least {needed} frames, got {got}")]
    SequenceTooShort { needed: usize, got: usize },

    /// Input carries no usable signal (e.g. an all-zero snapshot block has no
    /// retainable singular value).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Matrix or image shapes do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// NaN or infinity where a finite value is required.
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    /// An iterative solver failed to converge or produced an unusable result.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Every mode has eigenvalue zero, so no Fourier frequency is defined.
    #[error("no valid background mode: all eigenvalues are zero")]
    NoBackgroundMode,

    /// A configuration value is outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("I/O error on {path:?}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot decode image {path:?}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
