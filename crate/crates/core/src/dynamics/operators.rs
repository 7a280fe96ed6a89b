use num_complex::Complex64;

use super::{MhdState, PhysParams, VectorField};
use crate::spectral::transform::{forward_pair_into, inverse_pair_into, Fft2};
use crate::spectral::{
    fractional_power, partial_derivative, pointwise_product, Axis, GridSpec, SpectralField,
};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Biot–Savart inversion `û(k) = i (k₂, −k₁) ω̂(k) / |k|²`, the unique
/// mean-zero divergence-free field with `∇⊥·u = ω`. The same map recovers
/// `b` from `j`.
pub fn velocity_from_vorticity(omega_hat: &SpectralField) -> Result<VectorField> {
    if !omega_hat.is_mean_zero() {
        return Err(Error::NonZeroMean);
    }
    let nyq = (omega_hat.grid().n() / 2) as i64;
    let inv = |k1: i64, k2: i64| {
        let k_sq = (k1 * k1 + k2 * k2) as f64;
        if k_sq == 0.0 {
            0.0
        } else {
            1.0 / k_sq
        }
    };
    // The Nyquist wavenumber is treated like the derivative operator does,
    // so that `curl` of the result reproduces ω exactly.
    let d = |k: i64| if k == nyq { 0.0 } else { k as f64 };
    let comp1 = omega_hat.map_symbol(|k1, k2| Complex64::new(0.0, d(k2) * inv(k1, k2)));
    let comp2 = omega_hat.map_symbol(|k1, k2| Complex64::new(0.0, -d(k1) * inv(k1, k2)));
    VectorField::new(comp1, comp2)
}

/// Convective transport `v₁∂₁f + v₂∂₂f`, dealiased.
pub fn advect(v: &VectorField, f: &SpectralField) -> Result<SpectralField> {
    v.grid().ensure_same(&f.grid())?;
    let a = pointwise_product(&v.comp1, &partial_derivative(f, Axis::X1))?;
    let b = pointwise_product(&v.comp2, &partial_derivative(f, Axis::X2))?;
    Ok(&a + &b)
}

/// `T(∇u, ∇b) = 2∂₁b₁(∂₁u₂ + ∂₂u₁) + 2∂₂u₂(∂₁b₂ + ∂₂b₁)`, dealiased.
pub fn stretching_term(u: &VectorField, b: &VectorField) -> Result<SpectralField> {
    u.grid().ensure_same(&b.grid())?;
    let d = partial_derivative;
    let d1b1 = d(&b.comp1, Axis::X1);
    let d2u2 = d(&u.comp2, Axis::X2);
    let strain_u = &d(&u.comp2, Axis::X1) + &d(&u.comp1, Axis::X2);
    let strain_b = &d(&b.comp2, Axis::X1) + &d(&b.comp1, Axis::X2);
    let first = pointwise_product(&d1b1, &strain_u)?;
    let second = pointwise_product(&d2u2, &strain_b)?;
    Ok((&first + &second).scale(2.0))
}

/// Full right-hand side `(∂_t ω̂, ∂_t ĵ)` including dissipation.
pub fn rhs(state: &MhdState, params: &PhysParams) -> Result<(SpectralField, SpectralField)> {
    let grid = state.grid();
    state.omega_hat.grid().ensure_same(&state.j_hat.grid())?;
    let mut op = NonlinearOperator::new(grid);
    let (mut domega, mut dj) = op.evaluate(&state.omega_hat, &state.j_hat)?;
    let diss_w = fractional_power(&state.omega_hat, 2.0 * params.alpha)?;
    let diss_j = fractional_power(&state.j_hat, 2.0 * params.beta)?;
    for (d, l) in domega.coeffs_mut().iter_mut().zip(diss_w.coeffs()) {
        *d -= l * params.nu;
    }
    for (d, l) in dj.coeffs_mut().iter_mut().zip(diss_j.coeffs()) {
        *d -= l * params.kappa;
    }
    Ok((domega, dj))
}

/// Reusable evaluator of the quadratic terms
///
/// ```text
/// N_ω = −u·∇ω + b·∇j
/// N_j = −u·∇j + b·∇ω + T(∇u, ∇b)
/// ```
///
/// All twelve physical-space factors are synthesised two at a time and both
/// outputs are analysed with one packed transform. The result equals the
/// composition of [`advect`] and [`stretching_term`] up to rounding.
pub struct NonlinearOperator {
    grid: GridSpec,
    fft: Fft2,
    /// Derivative wavenumbers, with the Nyquist entry zeroed.
    d1: Vec<f64>,
    d2: Vec<f64>,
    inv_k_sq: Vec<f64>,
    retained: Vec<bool>,
    buf: Vec<Complex64>,
    spec_a: Vec<Complex64>,
    spec_b: Vec<Complex64>,
    phys: [Vec<f64>; 12],
    out_w: Vec<f64>,
    out_j: Vec<f64>,
}

impl NonlinearOperator {
    pub fn new(grid: GridSpec) -> Self {
        let len = grid.len();
        let nyq = (grid.n() / 2) as i64;
        let kmax = grid.dealias_kmax();
        let d = |k: i64| if k == nyq { 0.0 } else { k as f64 };
        let (mut d1, mut d2, mut inv_k_sq, mut retained) = (
            Vec::with_capacity(len),
            Vec::with_capacity(len),
            Vec::with_capacity(len),
            Vec::with_capacity(len),
        );
        for idx in 0..len {
            let (k1, k2) = grid.wavevector(idx);
            d1.push(d(k1));
            d2.push(d(k2));
            let k_sq = (k1 * k1 + k2 * k2) as f64;
            inv_k_sq.push(if k_sq == 0.0 { 0.0 } else { 1.0 / k_sq });
            retained.push(k1.abs().max(k2.abs()) <= kmax);
        }
        Self {
            grid,
            fft: Fft2::new(grid),
            d1,
            d2,
            inv_k_sq,
            retained,
            buf: vec![ZERO; len],
            spec_a: vec![ZERO; len],
            spec_b: vec![ZERO; len],
            phys: std::array::from_fn(|_| vec![0.0; len]),
            out_w: vec![0.0; len],
            out_j: vec![0.0; len],
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// Quadratic terms for the given vorticity and current.
    pub fn evaluate(
        &mut self,
        omega_hat: &SpectralField,
        j_hat: &SpectralField,
    ) -> Result<(SpectralField, SpectralField)> {
        self.grid.ensure_same(&omega_hat.grid())?;
        self.grid.ensure_same(&j_hat.grid())?;
        let mut nw = vec![ZERO; self.grid.len()];
        let mut nj = vec![ZERO; self.grid.len()];
        self.evaluate_into(omega_hat.coeffs(), j_hat.coeffs(), &mut nw, &mut nj);
        Ok((
            SpectralField::from_coeffs(self.grid, nw)?,
            SpectralField::from_coeffs(self.grid, nj)?,
        ))
    }

    pub(crate) fn evaluate_into(
        &mut self,
        w: &[Complex64],
        c: &[Complex64],
        out_w: &mut [Complex64],
        out_j: &mut [Complex64],
    ) {
        // Pairs of spectral factors, each a diagonal symbol applied to ω̂ or ĵ:
        //   (u₁, u₂), (b₁, b₂), (∂₁ω, ∂₂ω), (∂₁j, ∂₂j),
        //   (∂₁b₁, ∂₁b₂ + ∂₂b₁), (∂₂u₂, ∂₁u₂ + ∂₂u₁)
        // A pair never mixes ω and j, so a vanishing field synthesises to
        // exact zeros.
        for pair in 0..6 {
            for idx in 0..w.len() {
                let (k1, k2, ik) = (self.d1[idx], self.d2[idx], self.inv_k_sq[idx]);
                let (wi, ci) = (w[idx], c[idx]);
                let (a, b) = match pair {
                    0 => (i_times(wi * (k2 * ik)), i_times(wi * (-k1 * ik))),
                    1 => (i_times(ci * (k2 * ik)), i_times(ci * (-k1 * ik))),
                    2 => (i_times(wi * k1), i_times(wi * k2)),
                    3 => (i_times(ci * k1), i_times(ci * k2)),
                    4 => (ci * (-k1 * k2 * ik), ci * ((k1 * k1 - k2 * k2) * ik)),
                    _ => (wi * (k1 * k2 * ik), wi * ((k1 * k1 - k2 * k2) * ik)),
                };
                self.spec_a[idx] = a;
                self.spec_b[idx] = b;
            }
            let (lo, hi) = self.phys.split_at_mut(2 * pair + 1);
            inverse_pair_into(
                &mut self.fft,
                &self.spec_a,
                &self.spec_b,
                &mut self.buf,
                &mut lo[2 * pair],
                &mut hi[0],
            );
        }

        let [u1, u2, b1, b2, w1, w2, j1, j2, d1b1, sb, d2u2, su] = &self.phys;
        for i in 0..self.out_w.len() {
            self.out_w[i] = -(u1[i] * w1[i] + u2[i] * w2[i]) + (b1[i] * j1[i] + b2[i] * j2[i]);
            self.out_j[i] = -(u1[i] * j1[i] + u2[i] * j2[i])
                + (b1[i] * w1[i] + b2[i] * w2[i])
                + 2.0 * (d1b1[i] * su[i] + d2u2[i] * sb[i]);
        }
        forward_pair_into(
            &mut self.fft,
            self.grid,
            &self.out_w,
            &self.out_j,
            &mut self.buf,
            out_w,
            out_j,
        );
        // Keep an identically vanishing term exactly zero instead of letting
        // it pick up rounding from its packed partner (j ≡ 0 must stay 0).
        if self.out_w.iter().all(|&v| v == 0.0) {
            out_w.fill(ZERO);
        }
        if self.out_j.iter().all(|&v| v == 0.0) {
            out_j.fill(ZERO);
        }
        for idx in 0..out_w.len() {
            if !self.retained[idx] {
                out_w[idx] = ZERO;
                out_j[idx] = ZERO;
            }
        }
        // Both terms are divergences of periodic fields.
        out_w[0] = ZERO;
        out_j[0] = ZERO;
    }
}

#[inline]
fn i_times(z: Complex64) -> Complex64 {
    Complex64::new(-z.im, z.re)
}
