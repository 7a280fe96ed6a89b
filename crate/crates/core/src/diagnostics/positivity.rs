use crate::spectral::{fractional_power, inverse_transform, lp_norm, sobolev_seminorm, SpectralField};
use crate::{Error, Result};

/// Relative slack allowed below zero: `value ≥ −tol · scale`.
pub const POSITIVITY_TOLERANCE: f64 = 1e-10;

/// Quadrature value of `∫ (Λ^s ω) |ω|^{p−2} ω dx` and the natural scale
/// `‖ω‖_{L^p}^{p−1} ‖Λ^s ω‖_{L²}` it is compared against.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PositivitySample {
    pub s: f64,
    pub p: u32,
    pub value: f64,
    pub scale: f64,
}

impl PositivitySample {
    pub fn holds(&self, tolerance: f64) -> bool {
        self.value >= -tolerance * self.scale
    }

    /// `value / scale`, or 0 for a zero field.
    pub fn normalized(&self) -> f64 {
        if self.scale > 0.0 {
            self.value / self.scale
        } else {
            0.0
        }
    }
}

/// Evaluates the positivity integral for `s ∈ [0, 2]` and even `p ≥ 2`.
///
/// The grid quadrature is exact when `p` times the band limit of `ω` stays
/// below `n`.
pub fn positivity_integral(omega: &SpectralField, s: f64, p: u32) -> Result<PositivitySample> {
    if !(0.0..=2.0).contains(&s) {
        return Err(Error::InvalidParameter(format!("s must lie in [0, 2], got {s}")));
    }
    if p < 2 || !p.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("p must be an even integer >= 2, got {p}")));
    }
    if !omega.is_mean_zero() {
        return Err(Error::NonZeroMean);
    }
    let lambda = fractional_power(omega, s)?;
    let w = inverse_transform(omega)?;
    let lw = inverse_transform(&lambda)?;
    let h = omega.grid().spacing();
    let value: f64 = w
        .values()
        .iter()
        .zip(lw.values())
        .map(|(&x, &l)| l * x.powi(p as i32 - 1))
        .sum::<f64>()
        * h
        * h;
    let scale = lp_norm(&w, p as f64)?.powi(p as i32 - 1) * sobolev_seminorm(omega, s)?;
    Ok(PositivitySample { s, p, value, scale })
}

/// Runs the positivity integral for both `s = α` and `s = 2α`.
pub fn positivity_check(omega: &SpectralField, alpha: f64, p: u32) -> Result<[PositivitySample; 2]> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    Ok([
        positivity_integral(omega, alpha, p)?,
        positivity_integral(omega, 2.0 * alpha, p)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::random_band_field;
    use crate::spectral::{sobolev_seminorm_sq, GridSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn quadratic_case_is_parseval() {
        let g = GridSpec::new(32).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let w = random_band_field(g, &mut rng, 4.0).unwrap();
        for s in [0.2, 0.6, 0.98, 1.6] {
            let v = positivity_integral(&w, s, 2).unwrap();
            let expected = sobolev_seminorm_sq(&w, 0.5 * s).unwrap();
            assert!((v.value - expected).abs() <= 1e-12 * expected);
        }
    }

    #[test]
    fn zero_field() {
        let g = GridSpec::new(16).unwrap();
        let v = positivity_integral(&SpectralField::zeros(g), 0.6, 4).unwrap();
        assert_eq!(v.value, 0.0);
        assert!(v.holds(POSITIVITY_TOLERANCE));
    }

    #[test]
    fn parameter_checks() {
        let g = GridSpec::new(16).unwrap();
        let w = SpectralField::zeros(g);
        assert!(positivity_integral(&w, 0.5, 3).is_err());
        assert!(positivity_integral(&w, 2.5, 4).is_err());
        assert!(positivity_check(&w, 1.0, 4).is_err());
        assert_eq!(positivity_check(&w, 0.3, 4).unwrap()[1].s, 0.6);
    }
}
