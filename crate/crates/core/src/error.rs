use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("deleting all {0} rungs disconnects the graph")]
    DisconnectedFamily(usize),

    #[error("vertex {0} is isolated; normalized Laplacian undefined")]
    IsolatedVertex(usize),

    #[error("matrix blocks are not mirror-symmetric under the given pairing")]
    NotMirrorSymmetric,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("spectrum has {0} zero eigenvalues, expected exactly one")]
    NotConnectedSpectrum(usize),

    #[error("cubic factor has zero root product")]
    SingularCubic,

    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    #[error("exact arithmetic cap exceeded: {vertices} vertices > {cap}")]
    ExactCapExceeded { vertices: usize, cap: usize },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
