//! Fourier analysis on the periodic grid.
//!
//! Coefficients are stored densely in FFT order: index `i` along an axis
//! maps to the wavenumber `i` for `i <= n/2` and `i - n` otherwise, so the
//! wavevector set is `-n/2 < k <= n/2`. Both [`SpectralField`] and
//! [`RealSamples`] are row-major with the first index along `x₁`.

mod field;
mod grid;
mod norms;
mod ops;
pub(crate) mod transform;

pub use field::{RealSamples, SpectralField};
pub use grid::{Axis, GridSpec};
pub use norms::{l2_norm, lp_norm, sobolev_seminorm, sobolev_seminorm_sq};
pub use ops::{
    dealias, dealias_with_cutoff, fractional_power, partial_derivative, pointwise_product,
    pointwise_product_with_cutoff,
};
pub use transform::{forward_pair, forward_transform, inverse_pair, inverse_transform};

/// Relative tolerance on the imaginary residue accepted by [`inverse_transform`].
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;
