use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{total_energy, MhdState};
use crate::spectral::{l2_norm, GridSpec, SpectralField};
use crate::{Error, Result};

/// Shipped initial data. All are trigonometric polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialCondition {
    /// `ω = 2A cos x₁ cos x₂`, `j = 0`.
    TaylorGreen,
    /// `u = A(−sin x₂, sin x₁)`, `b = A(−sin x₂, sin 2x₁)`.
    OrszagTangLike,
    /// Independent Gaussian coefficients on `1 ≤ |k| ≤ 4` for `ω` and `j`,
    /// each scaled to `L²` norm `A`.
    RandomBand,
}

impl InitialCondition {
    pub fn name(&self) -> &'static str {
        match self {
            Self::TaylorGreen => "taylor-green",
            Self::OrszagTangLike => "orszag-tang-like",
            Self::RandomBand => "random-band",
        }
    }
}

impl fmt::Display for InitialCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InitialCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "taylor-green" => Ok(Self::TaylorGreen),
            "orszag-tang-like" => Ok(Self::OrszagTangLike),
            "random-band" => Ok(Self::RandomBand),
            other => Err(Error::InvalidParameter(format!("unknown initial condition `{other}`"))),
        }
    }
}

const RANDOM_BAND_RADIUS: f64 = 4.0;

fn real_mode(grid: GridSpec, modes: &[((i64, i64), f64)]) -> SpectralField {
    let mut f = SpectralField::zeros(grid);
    for &((k1, k2), amp) in modes {
        let c = f.coeff(k1, k2) + Complex64::new(amp, 0.0);
        f.set_coeff(k1, k2, c);
    }
    f
}

pub fn init_condition(
    kind: InitialCondition,
    grid: GridSpec,
    seed: u64,
    amplitude: f64,
) -> Result<MhdState> {
    if !amplitude.is_finite() {
        return Err(Error::InvalidParameter(format!("amplitude must be finite, got {amplitude}")));
    }
    let a = amplitude;
    let (omega, j) = match kind {
        InitialCondition::TaylorGreen => {
            // 2A cos x₁ cos x₂ = (A/2) Σ_{±,±} e^{i(±x₁ ± x₂)}
            let q = 0.5 * a;
            let w = real_mode(grid, &[((1, 1), q), ((1, -1), q), ((-1, 1), q), ((-1, -1), q)]);
            (w, SpectralField::zeros(grid))
        }
        InitialCondition::OrszagTangLike => {
            if grid.dealias_kmax() < 2 {
                return Err(Error::InvalidParameter(format!(
                    "orszag-tang-like data needs |k| = 2 to be resolved; n = {} is too small",
                    grid.n()
                )));
            }
            // ω = A(cos x₁ + cos x₂), j = A(2 cos 2x₁ + cos x₂)
            let h = 0.5 * a;
            let w = real_mode(grid, &[((1, 0), h), ((-1, 0), h), ((0, 1), h), ((0, -1), h)]);
            let j = real_mode(grid, &[((2, 0), a), ((-2, 0), a), ((0, 1), h), ((0, -1), h)]);
            (w, j)
        }
        InitialCondition::RandomBand => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w = random_band_field(grid, &mut rng, RANDOM_BAND_RADIUS)?;
            let j = random_band_field(grid, &mut rng, RANDOM_BAND_RADIUS)?;
            (w.scale(a / l2_norm(&w)), j.scale(a / l2_norm(&j)))
        }
    };
    MhdState::new(omega, j, 0.0)
}

/// Hermitian field with independent standard Gaussian real and imaginary
/// parts on every wavevector with `1 ≤ |k| ≤ radius`, zero elsewhere.
///
/// Wavevectors are drawn in a fixed order, so the output is a pure function
/// of the generator state.
pub fn random_band_field<R: Rng + ?Sized>(
    grid: GridSpec,
    rng: &mut R,
    radius: f64,
) -> Result<SpectralField> {
    if radius.is_nan() || radius < 1.0 || radius.floor() as i64 > grid.dealias_kmax() {
        return Err(Error::InvalidParameter(format!(
            "band radius {radius} must lie in [1, {}] on n = {}",
            grid.dealias_kmax(),
            grid.n()
        )));
    }
    let kr = radius.floor() as i64;
    let mut f = SpectralField::zeros(grid);
    for k1 in 0..=kr {
        for k2 in -kr..=kr {
            // Canonical half-plane; the partner is filled by symmetry.
            if k1 == 0 && k2 <= 0 {
                continue;
            }
            let k_sq = (k1 * k1 + k2 * k2) as f64;
            if k_sq > radius * radius {
                continue;
            }
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let c = Complex64::new(re, im);
            f.set_coeff(k1, k2, c);
            f.set_coeff(-k1, -k2, c.conj());
        }
    }
    Ok(f)
}

/// Rescales both fields so that `‖u‖² + ‖b‖² = energy`.
pub fn normalize_energy(state: &MhdState, energy: f64) -> Result<MhdState> {
    let current = total_energy(state);
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::InvalidParameter(format!("target energy must be positive, got {energy}")));
    }
    if current == 0.0 {
        return Err(Error::DegenerateInput("cannot normalise a zero-energy state".into()));
    }
    let factor = (energy / current).sqrt();
    MhdState::new(state.omega_hat.scale(factor), state.j_hat.scale(factor), state.time)
}
