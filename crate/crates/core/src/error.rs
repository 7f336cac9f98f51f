use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite value produced by {context} at iteration {iteration}")]
    NonFinite { context: String, iteration: usize },

    #[error("covariance stayed ill-conditioned after {retries} jitter escalations (jitter reached {jitter:e})")]
    IllConditionedCovariance { retries: usize, jitter: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("solver instability: |field| exceeded {limit:e} at time step {step}")]
    Instability { step: usize, limit: f64 },

    #[error("input normalization violated: {0}")]
    AssumptionViolation(String),

    #[error("training diverged at step {step}: {reason}")]
    Diverged { step: usize, reason: String },

    #[error("mean predictor gradient is zero; direction undefined")]
    ZeroMeanGradient,

    #[error("no admissible probe or witness found: {0}")]
    NoWitness(String),

    #[error("condition violated: {0}")]
    ConditionViolated(String),

    #[error("batch too large: {got} points exceeds limit {limit}")]
    BatchTooLarge { got: usize, limit: usize },

    #[error("format error in {path}: {kind}")]
    Format { path: String, kind: FormatErrorKind },

    #[error("incompatible inputs: {0}")]
    Incompatible(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// What went wrong while decoding a binary container.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatErrorKind {
    BadMagic,
    VersionMismatch,
    Truncated,
    ChecksumMismatch,
    MalformedHeader,
}

impl std::fmt::Display for FormatErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FormatErrorKind::BadMagic => "bad magic bytes",
            FormatErrorKind::VersionMismatch => "format version mismatch",
            FormatErrorKind::Truncated => "truncated file",
            FormatErrorKind::ChecksumMismatch => "checksum mismatch",
            FormatErrorKind::MalformedHeader => "malformed header",
        };
        f.write_str(s)
    }
}

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn format(path: impl Into<String>, kind: FormatErrorKind) -> Self {
        Error::Format {
            path: path.into(),
            kind,
        }
    }
}
