use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{GridSpec, RealSamples, SpectralField, HERMITIAN_TOLERANCE};
use crate::{Error, Result};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Two-dimensional FFT on an `n × n` buffer, built from 1D plans applied to
/// rows and, through a blocked transpose, to columns.
pub(crate) struct Fft2 {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    transposed: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Fft2 {
    pub(crate) fn new(grid: GridSpec) -> Self {
        let n = grid.n();
        let (forward, inverse) = PLANNER.with(|p| {
            let mut p = p.borrow_mut();
            (p.plan_fft_forward(n), p.plan_fft_inverse(n))
        });
        let scratch_len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        Self {
            n,
            forward,
            inverse,
            transposed: vec![Complex64::new(0.0, 0.0); n * n],
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
        }
    }

    /// Unnormalised `Σ_x f(x) e^{-ik·x}`.
    pub(crate) fn forward(&mut self, data: &mut [Complex64]) {
        let plan = Arc::clone(&self.forward);
        self.run(plan.as_ref(), data);
    }

    /// Unnormalised `Σ_k F(k) e^{ik·x}`.
    pub(crate) fn inverse(&mut self, data: &mut [Complex64]) {
        let plan = Arc::clone(&self.inverse);
        self.run(plan.as_ref(), data);
    }

    fn run(&mut self, plan: &dyn Fft<f64>, data: &mut [Complex64]) {
        debug_assert_eq!(data.len(), self.n * self.n);
        plan.process_with_scratch(data, &mut self.scratch);
        transpose(data, &mut self.transposed, self.n);
        plan.process_with_scratch(&mut self.transposed, &mut self.scratch);
        transpose(&self.transposed, data, self.n);
    }
}

fn transpose(src: &[Complex64], dst: &mut [Complex64], n: usize) {
    const BLOCK: usize = 16;
    for ib in (0..n).step_by(BLOCK) {
        for jb in (0..n).step_by(BLOCK) {
            for i in ib..(ib + BLOCK).min(n) {
                for j in jb..(jb + BLOCK).min(n) {
                    dst[j * n + i] = src[i * n + j];
                }
            }
        }
    }
}

/// Discrete Fourier coefficients `coeff(k) = (1/n²) Σ_x f(x) e^{-ik·x}`.
pub fn forward_transform(f: &RealSamples) -> SpectralField {
    let grid = f.grid();
    let mut buf: Vec<Complex64> = f.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    Fft2::new(grid).forward(&mut buf);
    let norm = 1.0 / grid.len() as f64;
    buf.iter_mut().for_each(|c| *c *= norm);
    SpectralField::from_coeffs(grid, buf).expect("length matches grid")
}

/// Synthesis `f(x) = Σ_k coeff(k) e^{ik·x}`.
///
/// Fails with [`Error::HermitianViolation`] when the imaginary part of the
/// synthesis exceeds [`HERMITIAN_TOLERANCE`] relative to the field scale.
pub fn inverse_transform(field: &SpectralField) -> Result<RealSamples> {
    let grid = field.grid();
    let mut buf = field.coeffs().to_vec();
    Fft2::new(grid).inverse(&mut buf);
    let (mut residue, mut scale) = (0.0f64, 0.0f64);
    for c in &buf {
        residue = residue.max(c.im.abs());
        scale = scale.max(c.re.abs());
    }
    if residue > HERMITIAN_TOLERANCE * scale {
        return Err(Error::HermitianViolation { residue, scale });
    }
    Ok(RealSamples::from_values(grid, buf.into_iter().map(|c| c.re).collect())
        .expect("length matches grid"))
}

/// Synthesises two Hermitian fields with a single complex transform by
/// packing them as `F + iG`. No Hermitian check is made.
pub fn inverse_pair(f: &SpectralField, g: &SpectralField) -> Result<(RealSamples, RealSamples)> {
    f.grid().ensure_same(&g.grid())?;
    let grid = f.grid();
    let mut fft = Fft2::new(grid);
    let mut buf = vec![Complex64::new(0.0, 0.0); grid.len()];
    let (mut a, mut b) = (vec![0.0; grid.len()], vec![0.0; grid.len()]);
    inverse_pair_into(&mut fft, f.coeffs(), g.coeffs(), &mut buf, &mut a, &mut b);
    Ok((
        RealSamples::from_values(grid, a)?,
        RealSamples::from_values(grid, b)?,
    ))
}

/// Analyses two real fields with a single complex transform.
pub fn forward_pair(f: &RealSamples, g: &RealSamples) -> Result<(SpectralField, SpectralField)> {
    f.grid().ensure_same(&g.grid())?;
    let grid = f.grid();
    let mut fft = Fft2::new(grid);
    let mut buf = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut a = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut b = a.clone();
    forward_pair_into(&mut fft, grid, f.values(), g.values(), &mut buf, &mut a, &mut b);
    Ok((
        SpectralField::from_coeffs(grid, a)?,
        SpectralField::from_coeffs(grid, b)?,
    ))
}

pub(crate) fn inverse_pair_into(
    fft: &mut Fft2,
    f: &[Complex64],
    g: &[Complex64],
    buf: &mut [Complex64],
    out_f: &mut [f64],
    out_g: &mut [f64],
) {
    for ((z, a), b) in buf.iter_mut().zip(f).zip(g) {
        // a + i b
        *z = Complex64::new(a.re - b.im, a.im + b.re);
    }
    fft.inverse(buf);
    for ((z, a), b) in buf.iter().zip(out_f.iter_mut()).zip(out_g.iter_mut()) {
        *a = z.re;
        *b = z.im;
    }
}

pub(crate) fn forward_pair_into(
    fft: &mut Fft2,
    grid: GridSpec,
    f: &[f64],
    g: &[f64],
    buf: &mut [Complex64],
    out_f: &mut [Complex64],
    out_g: &mut [Complex64],
) {
    for ((z, &a), &b) in buf.iter_mut().zip(f).zip(g) {
        *z = Complex64::new(a, b);
    }
    fft.forward(buf);
    let norm = 0.5 / grid.len() as f64;
    for idx in 0..grid.len() {
        let z = buf[idx];
        let zc = buf[grid.conjugate_index(idx)].conj();
        // F = (Z + conj Z(-k))/2, G = (Z - conj Z(-k))/(2i)
        out_f[idx] = (z + zc) * norm;
        let d = z - zc;
        out_g[idx] = Complex64::new(d.im, -d.re) * norm;
    }
}
