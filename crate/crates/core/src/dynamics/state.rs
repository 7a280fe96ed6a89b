use crate::spectral::{partial_derivative, Axis, GridSpec, SpectralField};
use crate::{Error, Result};

/// Vorticity and current coefficients at a given time.
#[derive(Clone, Debug, PartialEq)]
pub struct MhdState {
    pub omega_hat: SpectralField,
    pub j_hat: SpectralField,
    pub time: f64,
}

impl MhdState {
    pub fn new(omega_hat: SpectralField, j_hat: SpectralField, time: f64) -> Result<Self> {
        omega_hat.grid().ensure_same(&j_hat.grid())?;
        if !(time.is_finite() && time >= 0.0) {
            return Err(Error::InvalidParameter(format!("time must be >= 0, got {time}")));
        }
        if !omega_hat.is_mean_zero() || !j_hat.is_mean_zero() {
            return Err(Error::NonZeroMean);
        }
        Ok(Self { omega_hat, j_hat, time })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            omega_hat: SpectralField::zeros(grid),
            j_hat: SpectralField::zeros(grid),
            time: 0.0,
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.omega_hat.grid()
    }

    pub fn is_finite(&self) -> bool {
        self.omega_hat.is_finite() && self.j_hat.is_finite()
    }

    /// Largest coefficient difference over both fields.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.omega_hat
            .max_abs_diff(&other.omega_hat)
            .max(self.j_hat.max_abs_diff(&other.j_hat))
    }
}

/// A planar vector field given by the coefficients of its two components.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub comp1: SpectralField,
    pub comp2: SpectralField,
}

impl VectorField {
    pub fn new(comp1: SpectralField, comp2: SpectralField) -> Result<Self> {
        comp1.grid().ensure_same(&comp2.grid())?;
        Ok(Self { comp1, comp2 })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            comp1: SpectralField::zeros(grid),
            comp2: SpectralField::zeros(grid),
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.comp1.grid()
    }

    /// `∂₁v₁ + ∂₂v₂`.
    pub fn divergence(&self) -> SpectralField {
        &partial_derivative(&self.comp1, Axis::X1) + &partial_derivative(&self.comp2, Axis::X2)
    }

    /// Scalar curl `∇⊥·v = −∂₂v₁ + ∂₁v₂`.
    pub fn curl(&self) -> SpectralField {
        &partial_derivative(&self.comp2, Axis::X1) - &partial_derivative(&self.comp1, Axis::X2)
    }
}
