use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Dissipation coefficients and exponents.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysParams {
    pub nu: f64,
    pub kappa: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl PhysParams {
    /// Uses the standard normalisation: `ν = κ = 1` when `α > 0`, and
    /// `ν = 0, κ = 1` when `α = 0`.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let nu = if alpha > 0.0 { 1.0 } else { 0.0 };
        Self::with_coefficients(nu, 1.0, alpha, beta)
    }

    pub fn with_coefficients(nu: f64, kappa: f64, alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("nu", nu), ("kappa", kappa), ("alpha", alpha), ("beta", beta)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and non-negative, got {v}"
                )));
            }
        }
        Ok(Self { nu, kappa, alpha, beta })
    }

    /// `ν = κ = 0`.
    pub fn ideal(alpha: f64, beta: f64) -> Result<Self> {
        Self::with_coefficients(0.0, 0.0, alpha, beta)
    }

    /// `r = α + β − 1`, the order of the current estimate.
    pub fn r(&self) -> f64 {
        self.alpha + self.beta - 1.0
    }
}
