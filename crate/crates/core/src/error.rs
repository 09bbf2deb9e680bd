use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("unknown factor label `{0}`")]
    UnknownFactor(String),

    #[error("duplicate factor label `{0}`")]
    DuplicateFactor(String),

    #[error("invalid Hilbert space: {0}")]
    InvalidSpace(String),

    #[error("Hilbert spaces differ")]
    SpaceMismatch,

    #[error("operator is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("invalid projector set: {0}")]
    InvalidProjectors(String),

    #[error("slot `{0}` is not bound")]
    UnboundSlot(String),

    #[error(
        "slot `{slot}` is bound to a {actual}x{actual} operator, expected {expected}x{expected}"
    )]
    BindingDimension {
        slot: String,
        expected: usize,
        actual: usize,
    },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("device `{slot}` carried {photons:.6} photons on average, more than one use")]
    DeviceReuse { slot: String, photons: f64 },

    #[error("invalid pulse: {0}")]
    InvalidPulse(String),

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
