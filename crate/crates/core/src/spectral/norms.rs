use std::f64::consts::PI;

use super::ops::lattice_power;
use super::{RealSamples, SpectralField};
use crate::{Error, Result};

/// `‖F‖_{L²}` on the torus via Parseval: `2π (Σ_k |coeff(k)|²)^{1/2}`.
pub fn l2_norm(field: &SpectralField) -> f64 {
    let sum: f64 = field.coeffs().iter().map(|c| c.norm_sqr()).sum();
    2.0 * PI * sum.sqrt()
}

/// `‖Λ^s F‖²_{L²}`, evaluated without materialising `Λ^s F`.
pub fn sobolev_seminorm_sq(field: &SpectralField, s: f64) -> Result<f64> {
    if !s.is_finite() || s < -1.0 {
        return Err(Error::InvalidParameter(format!(
            "Sobolev exponent must be finite and >= -1, got {s}"
        )));
    }
    if s < 0.0 && !field.is_mean_zero() {
        return Err(Error::NegativePowerOnMean { power: s });
    }
    let grid = field.grid();
    let sum: f64 = field
        .coeffs()
        .iter()
        .enumerate()
        .map(|(idx, c)| {
            let (k1, k2) = grid.wavevector(idx);
            lattice_power(k1, k2, 2.0 * s) * c.norm_sqr()
        })
        .sum();
    Ok(4.0 * PI * PI * sum)
}

/// `‖Λ^s F‖_{L²}`.
pub fn sobolev_seminorm(field: &SpectralField, s: f64) -> Result<f64> {
    Ok(sobolev_seminorm_sq(field, s)?.sqrt())
}

/// Grid quadrature `((2π/n)² Σ|f|^p)^{1/p}`, or `max |f|` for `p = ∞`.
pub fn lp_norm(f: &RealSamples, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "Lebesgue exponent must lie in [1, ∞], got {p}"
        )));
    }
    if p.is_infinite() {
        return Ok(f.max_abs());
    }
    let h = f.grid().spacing();
    let sum: f64 = if p == 2.0 {
        f.values().iter().map(|v| v * v).sum()
    } else {
        f.values().iter().map(|v| v.abs().powf(p)).sum()
    };
    Ok((h * h * sum).powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{forward_transform, GridSpec};
    use approx::assert_relative_eq;

    #[test]
    fn cosine_norms() {
        let g = GridSpec::new(16).unwrap();
        let x = RealSamples::from_fn(g, |x1, _| x1.cos());
        let f = forward_transform(&x);
        assert_relative_eq!(l2_norm(&f), PI * 2f64.sqrt(), max_relative = 1e-14);
        for s in [0.0, 0.3, 1.0, 2.5] {
            assert_relative_eq!(sobolev_seminorm(&f, s).unwrap(), PI * 2f64.sqrt(), max_relative = 1e-14);
        }
        assert_relative_eq!(lp_norm(&x, f64::INFINITY).unwrap(), 1.0);
        assert_relative_eq!(lp_norm(&x, 2.0).unwrap(), PI * 2f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(lp_norm(&x, 4.0).unwrap(), (1.5 * PI * PI).powf(0.25), max_relative = 1e-14);
    }

    #[test]
    fn second_harmonic_seminorm() {
        let g = GridSpec::new(16).unwrap();
        let f = forward_transform(&RealSamples::from_fn(g, |x1, _| (2.0 * x1).cos()));
        assert_relative_eq!(sobolev_seminorm(&f, 1.0).unwrap(), 2.0 * PI * 2f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn zero_field_has_zero_norms() {
        let g = GridSpec::new(8).unwrap();
        assert_eq!(l2_norm(&SpectralField::zeros(g)), 0.0);
        assert_eq!(lp_norm(&RealSamples::zeros(g), 3.0).unwrap(), 0.0);
    }

    #[test]
    fn rejects_sub_unit_exponent() {
        let g = GridSpec::new(8).unwrap();
        assert!(lp_norm(&RealSamples::zeros(g), 0.5).is_err());
    }
}
