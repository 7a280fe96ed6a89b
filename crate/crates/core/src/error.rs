use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("field is not Hermitian: imaginary residue {residue:e} exceeds tolerance for scale {scale:e}")]
    HermitianViolation { residue: f64, scale: f64 },

    #[error("negative fractional power {power} applied to a field with nonzero mean")]
    NegativePowerOnMean { power: f64 },

    #[error("grid mismatch: {left} vs {right} points per dimension")]
    GridMismatch { left: usize, right: usize },

    #[error("field has nonzero mean; Biot-Savart inversion requires a mean-zero field")]
    NonZeroMean,

    #[error("non-finite coefficient produced at t = {time}")]
    NonFinite { time: f64 },

    #[error("resolution lost at t = {time}: spectral tail fraction {fraction:e}")]
    ResolutionLoss { time: f64, fraction: f64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("malformed checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
