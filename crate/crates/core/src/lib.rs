//! Pseudospectral simulation of the two-dimensional MHD system with
//! fractional dissipation, in vorticity/current form, on the periodic
//! torus `[0, 2π)²`.
//!
//! The crate is organised in four layers:
//!
//! * [`spectral`]: grids, transforms, Fourier multipliers, dealiased
//!   products and norms.
//! * [`dynamics`]: Biot–Savart reconstruction, the nonlinear and dissipative
//!   right-hand sides, the integrating-factor RK4 stepper, initial data and
//!   checkpoints.
//! * [`diagnostics`]: per-sample monitors of the a priori functionals, the
//!   positivity and Gagliardo–Nirenberg checks and the regularity-region
//!   classifier.
//! * [`harness`]: run configuration, single runs, parameter sweeps and the
//!   property verification suite behind the `fracmhd` binary.

pub mod diagnostics;
pub mod dynamics;
mod error;
pub mod harness;
pub mod spectral;

pub use error::{Error, Result};
