use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at token {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("{0}")]
    Domain(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("Jones-Wenzl projector P{n} is singular here (Δ{k} vanishes)")]
    SingularProjector { n: usize, k: usize },

    #[error("labels ({0}, {1}, {2}) are not admissible")]
    Inadmissible(u32, u32, u32),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-unitary regime: {0}")]
    NonUnitary(String),

    #[error("move not applicable at position {position}: {reason}")]
    InapplicableMove { position: usize, reason: String },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::ResourceCap(_) => 4,
            _ => 3,
        }
    }
}
