use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use super::GridSpec;
use crate::{Error, Result};

/// Fourier coefficients of a real scalar field on the torus.
///
/// `coeff(k) = (1/n²) Σ_x f(x) e^{-i k·x}`, so a band-limited field has
/// exactly its analytic Fourier coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    grid: GridSpec,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn from_coeffs(grid: GridSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        Ok(Self { grid, coeffs })
    }

    /// Builds a field from a function of the wavevector `(k1, k2)`.
    pub fn from_fn(grid: GridSpec, mut f: impl FnMut(i64, i64) -> Complex64) -> Self {
        let coeffs = (0..grid.len())
            .map(|idx| {
                let (k1, k2) = grid.wavevector(idx);
                f(k1, k2)
            })
            .collect();
        Self { grid, coeffs }
    }

    /// Sum of the given `(k1, k2, amplitude)` modes.
    pub fn from_modes(grid: GridSpec, modes: &[(i64, i64, Complex64)]) -> Self {
        let mut f = Self::zeros(grid);
        for &(k1, k2, amp) in modes {
            let c = f.coeff(k1, k2) + amp;
            f.set_coeff(k1, k2, c);
        }
        f
    }

    /// `amp · cos(k·x)` for `k ≠ 0`.
    pub fn cosine(grid: GridSpec, k1: i64, k2: i64, amp: f64) -> Self {
        let h = Complex64::new(0.5 * amp, 0.0);
        Self::from_modes(grid, &[(k1, k2, h), (-k1, -k2, h)])
    }

    /// `amp · sin(k·x)` for `k ≠ 0`.
    pub fn sine(grid: GridSpec, k1: i64, k2: i64, amp: f64) -> Self {
        let h = Complex64::new(0.0, -0.5 * amp);
        Self::from_modes(grid, &[(k1, k2, h), (-k1, -k2, h.conj())])
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient at wavevector `(k1, k2)`; zero outside the resolved set.
    pub fn coeff(&self, k1: i64, k2: i64) -> Complex64 {
        self.grid
            .flat_index(k1, k2)
            .map_or(Complex64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    /// Sets the coefficient at `(k1, k2)`. Panics if the wavevector is not
    /// resolved on this grid.
    pub fn set_coeff(&mut self, k1: i64, k2: i64, value: Complex64) {
        let idx = self
            .grid
            .flat_index(k1, k2)
            .unwrap_or_else(|| panic!("wavevector ({k1}, {k2}) not resolved on n = {}", self.grid.n()));
        self.coeffs[idx] = value;
    }

    pub fn mean(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn is_mean_zero(&self) -> bool {
        self.coeffs[0] == Complex64::new(0.0, 0.0)
    }

    pub fn clear_mean(&mut self) {
        self.coeffs[0] = Complex64::new(0.0, 0.0);
    }

    /// Largest `|coeff(-k) - conj(coeff(k))|` over the grid.
    pub fn hermitian_defect(&self) -> f64 {
        (0..self.grid.len())
            .map(|idx| (self.coeffs[self.grid.conjugate_index(idx)] - self.coeffs[idx].conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplies every coefficient by `symbol(k1, k2)`.
    pub fn map_symbol(&self, mut symbol: impl FnMut(i64, i64) -> Complex64) -> Self {
        let grid = self.grid;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                let (k1, k2) = grid.wavevector(idx);
                c * symbol(k1, k2)
            })
            .collect();
        Self { grid, coeffs }
    }

    /// Real inner product `Σ_k Re(self(k) conj(other(k)))`.
    pub fn inner(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a * b.conj()).re)
            .sum()
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;

    fn add(self, rhs: &SpectralField) -> SpectralField {
        assert_eq!(self.grid, rhs.grid, "grid mismatch in field addition");
        SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;

    fn sub(self, rhs: &SpectralField) -> SpectralField {
        assert_eq!(self.grid, rhs.grid, "grid mismatch in field subtraction");
        SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl AddAssign<&SpectralField> for SpectralField {
    fn add_assign(&mut self, rhs: &SpectralField) {
        assert_eq!(self.grid, rhs.grid, "grid mismatch in field addition");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;

    fn neg(self) -> SpectralField {
        self.scale(-1.0)
    }
}

impl Mul<&SpectralField> for f64 {
    type Output = SpectralField;

    fn mul(self, rhs: &SpectralField) -> SpectralField {
        rhs.scale(self)
    }
}

/// Real samples of a field at the `n × n` grid nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct RealSamples {
    grid: GridSpec,
    values: Vec<f64>,
}

impl RealSamples {
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    pub fn from_values(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f(x₁, x₂)` at every node.
    pub fn from_fn(grid: GridSpec, f: impl Fn(f64, f64) -> f64) -> Self {
        let n = grid.n();
        let values = (0..grid.len())
            .map(|idx| {
                let (x1, x2) = grid.node(idx / n, idx % n);
                f(x1, x2)
            })
            .collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn get(&self, i1: usize, i2: usize) -> f64 {
        self.values[i1 * self.grid.n() + i2]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}
