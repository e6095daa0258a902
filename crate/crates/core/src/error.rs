use thiserror::Error;

/// Errors produced anywhere in the simulation and detection pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The state has weight on a basis vector the truncated dynamics cannot
    /// represent faithfully.
    #[error("state has support outside the excitation-valid subspace: {0}")]
    Truncation(String),

    #[error(
        "SDP solver did not converge after {iterations} iterations \
         (gap {gap:.3e}, primal residual {primal_residual:.3e}, dual residual {dual_residual:.3e})"
    )]
    NonConvergence {
        iterations: usize,
        gap: f64,
        primal_residual: f64,
        dual_residual: f64,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid value for `{key}`: {msg}")]
    Validation { key: String, msg: String },

    #[error("sweep failed at setting {setting}, gt = {gt}: {source}")]
    Sweep {
        setting: usize,
        gt: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

impl Error {
    /// Whether the failure comes from the numerics rather than from the input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Truncation(_) | Error::NonConvergence { .. } | Error::Numerical(_) => true,
            Error::Sweep { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}
