//! Quadratic integrals of the state, evaluated in Fourier space.

use std::f64::consts::PI;

use super::{MhdState, PhysParams};
use crate::spectral::{sobolev_seminorm_sq, SpectralField};
use crate::Result;

const AREA: f64 = 4.0 * PI * PI;

/// `Σ_k w(|k|²) Re(f(k) conj(g(k)))` over nonzero modes, times `(2π)²`.
fn weighted_inner(f: &SpectralField, g: &SpectralField, weight: impl Fn(f64) -> f64) -> f64 {
    let grid = f.grid();
    let sum: f64 = f
        .coeffs()
        .iter()
        .zip(g.coeffs())
        .enumerate()
        .filter_map(|(idx, (a, b))| {
            let (k1, k2) = grid.wavevector(idx);
            let k_sq = (k1 * k1 + k2 * k2) as f64;
            (k_sq > 0.0).then(|| weight(k_sq) * (a * b.conj()).re)
        })
        .sum();
    AREA * sum
}

/// `‖u‖²_{L²} = ‖Λ^{-1} ω‖²_{L²}`.
pub fn kinetic_energy(state: &MhdState) -> f64 {
    weighted_inner(&state.omega_hat, &state.omega_hat, |k| 1.0 / k)
}

/// `‖b‖²_{L²} = ‖Λ^{-1} j‖²_{L²}`.
pub fn magnetic_energy(state: &MhdState) -> f64 {
    weighted_inner(&state.j_hat, &state.j_hat, |k| 1.0 / k)
}

/// `‖u‖² + ‖b‖²`.
pub fn total_energy(state: &MhdState) -> f64 {
    kinetic_energy(state) + magnetic_energy(state)
}

/// Cross helicity `∫ u·b dx`.
pub fn cross_helicity(state: &MhdState) -> f64 {
    weighted_inner(&state.omega_hat, &state.j_hat, |k| 1.0 / k)
}

/// `‖a‖²_{L²} = ‖Λ^{-2} j‖²_{L²}` for the magnetic potential `a`
/// (`b = ∇⊥a`, `j = Δa`).
pub fn mean_square_potential(state: &MhdState) -> f64 {
    weighted_inner(&state.j_hat, &state.j_hat, |k| 1.0 / (k * k))
}

/// `ν‖Λ^α u‖² + κ‖Λ^β b‖²`, so that `d/dt ½(‖u‖² + ‖b‖²)` equals minus this.
pub fn dissipation_rate(state: &MhdState, params: &PhysParams) -> Result<f64> {
    let du = sobolev_seminorm_sq(&state.omega_hat, params.alpha - 1.0)?;
    let db = sobolev_seminorm_sq(&state.j_hat, params.beta - 1.0)?;
    Ok(params.nu * du + params.kappa * db)
}
