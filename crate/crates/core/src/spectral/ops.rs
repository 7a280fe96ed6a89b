use num_complex::Complex64;

use super::transform::{forward_pair_into, Fft2};
use super::{Axis, SpectralField};
use crate::{Error, Result};

/// `|k|^s` on the integer lattice, with the zero mode mapped to 0.
#[inline]
pub(crate) fn lattice_power(k1: i64, k2: i64, s: f64) -> f64 {
    let k_sq = (k1 * k1 + k2 * k2) as f64;
    if k_sq == 0.0 {
        0.0
    } else {
        k_sq.powf(0.5 * s)
    }
}

/// Applies `Λ^s = (-Δ)^{s/2}` with symbol `|k|^s`. The zero mode of the
/// result is always 0.
pub fn fractional_power(field: &SpectralField, s: f64) -> Result<SpectralField> {
    if !s.is_finite() || s < -1.0 {
        return Err(Error::InvalidParameter(format!(
            "fractional power must be finite and >= -1, got {s}"
        )));
    }
    if s < 0.0 && !field.is_mean_zero() {
        return Err(Error::NegativePowerOnMean { power: s });
    }
    Ok(field.map_symbol(|k1, k2| Complex64::new(lattice_power(k1, k2, s), 0.0)))
}

/// Spectral derivative `i k_axis coeff(k)`.
///
/// The Nyquist wavenumber along the differentiated axis is dropped: it has
/// no Hermitian partner, so an odd derivative of it is not a real field.
pub fn partial_derivative(field: &SpectralField, axis: Axis) -> SpectralField {
    let nyquist = (field.grid().n() / 2) as i64;
    field.map_symbol(|k1, k2| {
        let k = match axis {
            Axis::X1 => k1,
            Axis::X2 => k2,
        };
        if k == nyquist {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, k as f64)
        }
    })
}

/// Two-thirds rule: zero every mode with `max(|k1|, |k2|)` above the
/// retained cutoff [`GridSpec::dealias_kmax`](super::GridSpec::dealias_kmax).
pub fn dealias(field: &SpectralField) -> SpectralField {
    dealias_with_cutoff(field, field.grid().dealias_kmax())
}

/// Zeroes every mode with `max(|k1|, |k2|) > kmax`.
pub fn dealias_with_cutoff(field: &SpectralField, kmax: i64) -> SpectralField {
    let mut out = field.clone();
    let grid = field.grid();
    for (idx, c) in out.coeffs_mut().iter_mut().enumerate() {
        let (k1, k2) = grid.wavevector(idx);
        if k1.abs().max(k2.abs()) > kmax {
            *c = Complex64::new(0.0, 0.0);
        }
    }
    out
}

/// Pseudospectral product of two dealiased fields: synthesise both, multiply
/// on the grid, analyse and dealias. For inputs inside the retained set this
/// equals the truncated convolution `Σ_m F(k-m) G(m)` projected onto it.
pub fn pointwise_product(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    pointwise_product_with_cutoff(f, g, f.grid().dealias_kmax())
}

/// [`pointwise_product`] with an explicit retained cutoff.
pub fn pointwise_product_with_cutoff(
    f: &SpectralField,
    g: &SpectralField,
    kmax: i64,
) -> Result<SpectralField> {
    f.grid().ensure_same(&g.grid())?;
    let grid = f.grid();
    let len = grid.len();
    let mut fft = Fft2::new(grid);
    // Separate syntheses keep F·0 exactly zero; the packed form would leave
    // rounding noise in the imaginary channel.
    let mut a = f.coeffs().to_vec();
    let mut b = g.coeffs().to_vec();
    fft.inverse(&mut a);
    fft.inverse(&mut b);
    let real: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x.re * y.re).collect();
    let zeros = vec![0.0; len];
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    let mut prod = vec![Complex64::new(0.0, 0.0); len];
    let mut unused = prod.clone();
    forward_pair_into(&mut fft, grid, &real, &zeros, &mut buf, &mut prod, &mut unused);
    let prod = SpectralField::from_coeffs(grid, prod)?;
    Ok(dealias_with_cutoff(&prod, kmax))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{forward_transform, inverse_transform, GridSpec, RealSamples};

    fn cos_x1(n: usize) -> SpectralField {
        SpectralField::cosine(GridSpec::new(n).unwrap(), 1, 0, 1.0)
    }

    #[test]
    fn laplacian_of_unit_mode_is_identity() {
        let f = cos_x1(16);
        assert!(fractional_power(&f, 2.0).unwrap().max_abs_diff(&f) < 1e-15);
        assert!(fractional_power(&f, 0.0).unwrap().max_abs_diff(&f) < 1e-15);
    }

    #[test]
    fn three_four_five() {
        let g = GridSpec::new(16).unwrap();
        let mut f = SpectralField::zeros(g);
        f.set_coeff(3, 4, Complex64::new(0.25, -0.5));
        let out = fractional_power(&f, 1.0).unwrap();
        assert!((out.coeff(3, 4) - Complex64::new(1.25, -2.5)).norm() < 1e-14);
    }

    #[test]
    fn negative_power_requires_zero_mean() {
        let g = GridSpec::new(8).unwrap();
        let mut f = SpectralField::zeros(g);
        f.set_coeff(0, 0, Complex64::new(1.0, 0.0));
        assert!(matches!(
            fractional_power(&f, -0.5),
            Err(Error::NegativePowerOnMean { .. })
        ));
        assert!(fractional_power(&f, -1.5).is_err());
        // Non-negative powers always zero the mean.
        assert_eq!(fractional_power(&f, 1.0).unwrap().mean(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn derivatives_of_trig_modes() {
        let g = GridSpec::new(16).unwrap();
        let s = SpectralField::sine(g, 1, 0, 1.0);
        assert!(s.max_abs_diff(&forward_transform(&RealSamples::from_fn(g, |x1, _| x1.sin()))) < 1e-15);
        let d = inverse_transform(&partial_derivative(&s, Axis::X1)).unwrap();
        assert!(d.max_abs_diff(&RealSamples::from_fn(g, |x1, _| x1.cos())) < 1e-14);
        let c = cos_x1(16);
        assert!(partial_derivative(&c, Axis::X2).max_abs() == 0.0);
    }

    #[test]
    fn dealias_cutoff_on_sixteen() {
        let g = GridSpec::new(16).unwrap();
        let mut f = SpectralField::zeros(g);
        f.set_coeff(6, 0, Complex64::new(1.0, 0.0));
        f.set_coeff(5, 0, Complex64::new(1.0, 0.0));
        let d = dealias(&f);
        assert_eq!(d.coeff(6, 0), Complex64::new(0.0, 0.0));
        assert_eq!(d.coeff(5, 0), Complex64::new(1.0, 0.0));
        assert_eq!(dealias(&d), d);
    }

    #[test]
    fn double_angle_product() {
        let f = cos_x1(16);
        let p = pointwise_product(&f, &f).unwrap();
        assert!((p.coeff(0, 0) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((p.coeff(2, 0) - Complex64::new(0.25, 0.0)).norm() < 1e-15);
        assert!((p.coeff(-2, 0) - Complex64::new(0.25, 0.0)).norm() < 1e-15);
        let zero = SpectralField::zeros(f.grid());
        assert_eq!(pointwise_product(&f, &zero).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn product_rejects_mismatched_grids() {
        let a = cos_x1(16);
        let b = cos_x1(8);
        assert!(matches!(
            pointwise_product(&a, &b),
            Err(Error::GridMismatch { .. })
        ));
    }
}
