//! Checkpoints: a JSON metadata document plus a raw little-endian block
//! holding `ω̂` then `ĵ` as interleaved `(re, im)` f64 pairs in row-major
//! wavevector order (the storage order of [`SpectralField`]).

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{MhdState, PhysParams};
use crate::spectral::{GridSpec, SpectralField};
use crate::{Error, Result};

pub const CHECKPOINT_FORMAT: &str = "fracmhd-checkpoint";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckpointMeta {
    pub format: String,
    pub version: u32,
    pub grid_n: usize,
    pub params: PhysParams,
    pub time: f64,
    /// Binary block, relative to the metadata file.
    pub data_file: String,
}

/// Writes `<stem>.json` and `<stem>.bin`; returns the metadata path.
pub fn write_checkpoint(stem: &Path, state: &MhdState, params: &PhysParams) -> Result<PathBuf> {
    let json_path = stem.with_extension("json");
    let bin_path = stem.with_extension("bin");
    let data_file = bin_path
        .file_name()
        .and_then(|s| s.to_str())
        .ok_or_else(|| Error::InvalidParameter(format!("bad checkpoint stem {}", stem.display())))?
        .to_owned();
    let meta = CheckpointMeta {
        format: CHECKPOINT_FORMAT.into(),
        version: 1,
        grid_n: state.grid().n(),
        params: *params,
        time: state.time,
        data_file,
    };
    let mut bytes = Vec::with_capacity(2 * 16 * state.grid().len());
    for c in state.omega_hat.coeffs().iter().chain(state.j_hat.coeffs()) {
        bytes.extend_from_slice(&c.re.to_le_bytes());
        bytes.extend_from_slice(&c.im.to_le_bytes());
    }
    fs::write(&bin_path, bytes)?;
    fs::write(&json_path, serde_json::to_string_pretty(&meta)?)?;
    Ok(json_path)
}

pub fn read_checkpoint(json_path: &Path) -> Result<(MhdState, PhysParams)> {
    let bad = |reason: String| Error::Checkpoint {
        path: json_path.to_owned(),
        reason,
    };
    let meta: CheckpointMeta = serde_json::from_str(&fs::read_to_string(json_path)?)?;
    if meta.format != CHECKPOINT_FORMAT || meta.version != 1 {
        return Err(bad(format!("unsupported format {} v{}", meta.format, meta.version)));
    }
    let grid = GridSpec::new(meta.grid_n)?;
    let bin_path = json_path
        .parent()
        .unwrap_or_else(|| Path::new("."))
        .join(&meta.data_file);
    let bytes = fs::read(&bin_path)?;
    let expected = 2 * 16 * grid.len();
    if bytes.len() != expected {
        return Err(bad(format!("expected {expected} data bytes, found {}", bytes.len())));
    }
    let mut coeffs = bytes.chunks_exact(16).map(|chunk| {
        let re = f64::from_le_bytes(chunk[..8].try_into().expect("8 bytes"));
        let im = f64::from_le_bytes(chunk[8..].try_into().expect("8 bytes"));
        Complex64::new(re, im)
    });
    let omega: Vec<_> = coeffs.by_ref().take(grid.len()).collect();
    let j: Vec<_> = coeffs.collect();
    let state = MhdState::new(
        SpectralField::from_coeffs(grid, omega)?,
        SpectralField::from_coeffs(grid, j)?,
        meta.time,
    )?;
    let params = PhysParams::with_coefficients(
        meta.params.nu,
        meta.params.kappa,
        meta.params.alpha,
        meta.params.beta,
    )?;
    Ok((state, params))
}
