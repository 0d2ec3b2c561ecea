use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("field has {found} values but the grid has {expected} nodes")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Explicit transport would be unstable; the caller must shrink dt.
    #[error("CFL violation: courant number {courant:.6} exceeds 1")]
    CflViolation { courant: f64 },

    #[error("singular tridiagonal system (zero pivot at row {row})")]
    SingularSystem { row: usize },

    #[error("state has diverged (non-finite values)")]
    Diverged,

    #[error("sample times must be strictly increasing (violated at index {index})")]
    UnsortedTimes { index: usize },

    #[error("inadmissible bound-state parameters: {0}")]
    Inadmissible(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
