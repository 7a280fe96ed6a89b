use num_complex::Complex64;

use super::operators::NonlinearOperator;
use super::{velocity_from_vorticity, MhdState, PhysParams};
use crate::spectral::transform::{inverse_pair_into, Fft2};
use crate::spectral::{GridSpec, SpectralField};
use crate::{Error, Result};

/// Lower bound on the transport speed used by [`cfl_dt`].
pub const CFL_SPEED_FLOOR: f64 = 1e-8;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

struct Factors {
    dt: f64,
    omega_full: Vec<f64>,
    omega_half: Vec<f64>,
    j_full: Vec<f64>,
    j_half: Vec<f64>,
}

/// Integrating-factor RK4 stepper.
///
/// The dissipation `ν|k|^{2α}`, `κ|k|^{2β}` is integrated exactly by the
/// multipliers `e^{−ν|k|^{2α}dt}`, `e^{−κ|k|^{2β}dt}`; classical RK4 acts on
/// the quadratic terms in the transformed variables (Lawson's scheme).
pub struct Integrator {
    grid: GridSpec,
    params: PhysParams,
    nonlinear: NonlinearOperator,
    include_nonlinear: bool,
    rate_omega: Vec<f64>,
    rate_j: Vec<f64>,
    factors: Option<Factors>,
    stages: [Vec<Complex64>; 10],
}

impl Integrator {
    pub fn new(grid: GridSpec, params: PhysParams) -> Self {
        let len = grid.len();
        let (mut rate_omega, mut rate_j) = (Vec::with_capacity(len), Vec::with_capacity(len));
        for idx in 0..len {
            let (k1, k2) = grid.wavevector(idx);
            let k_sq = (k1 * k1 + k2 * k2) as f64;
            let (a, b) = if k_sq == 0.0 {
                (0.0, 0.0)
            } else {
                (k_sq.powf(params.alpha), k_sq.powf(params.beta))
            };
            rate_omega.push(params.nu * a);
            rate_j.push(params.kappa * b);
        }
        Self {
            grid,
            params,
            nonlinear: NonlinearOperator::new(grid),
            include_nonlinear: true,
            rate_omega,
            rate_j,
            factors: None,
            stages: std::array::from_fn(|_| vec![ZERO; len]),
        }
    }

    /// Drops the quadratic terms, leaving the exact linear decay. Used to
    /// test the integrating factor in isolation.
    pub fn without_nonlinear(mut self) -> Self {
        self.include_nonlinear = false;
        self
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn params(&self) -> &PhysParams {
        &self.params
    }

    /// Full right-hand side, dissipation included.
    pub fn rhs(&mut self, state: &MhdState) -> Result<(SpectralField, SpectralField)> {
        let (mut dw, mut dj) = if self.include_nonlinear {
            self.nonlinear.evaluate(&state.omega_hat, &state.j_hat)?
        } else {
            (SpectralField::zeros(self.grid), SpectralField::zeros(self.grid))
        };
        for (idx, d) in dw.coeffs_mut().iter_mut().enumerate() {
            *d -= state.omega_hat.coeffs()[idx] * self.rate_omega[idx];
        }
        for (idx, d) in dj.coeffs_mut().iter_mut().enumerate() {
            *d -= state.j_hat.coeffs()[idx] * self.rate_j[idx];
        }
        Ok((dw, dj))
    }

    fn prepare(&mut self, dt: f64) {
        if self.factors.as_ref().is_some_and(|f| f.dt == dt) {
            return;
        }
        let exp = |rates: &[f64], h: f64| rates.iter().map(|r| (-r * h).exp()).collect::<Vec<_>>();
        self.factors = Some(Factors {
            dt,
            omega_full: exp(&self.rate_omega, dt),
            omega_half: exp(&self.rate_omega, 0.5 * dt),
            j_full: exp(&self.rate_j, dt),
            j_half: exp(&self.rate_j, 0.5 * dt),
        });
    }

    fn quadratic(&mut self, w: usize, j: usize, out_w: usize, out_j: usize) {
        if !self.include_nonlinear {
            self.stages[out_w].iter_mut().for_each(|c| *c = ZERO);
            self.stages[out_j].iter_mut().for_each(|c| *c = ZERO);
            return;
        }
        let mut ow = std::mem::take(&mut self.stages[out_w]);
        let mut oj = std::mem::take(&mut self.stages[out_j]);
        self.nonlinear
            .evaluate_into(&self.stages[w], &self.stages[j], &mut ow, &mut oj);
        self.stages[out_w] = ow;
        self.stages[out_j] = oj;
    }

    /// Advances `state` by `dt`.
    pub fn step(&mut self, state: &MhdState, dt: f64) -> Result<MhdState> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
        }
        self.grid.ensure_same(&state.grid())?;
        self.prepare(dt);
        let len = self.grid.len();
        let w0 = state.omega_hat.coeffs();
        let j0 = state.j_hat.coeffs();

        // Stage slots: 0,1 = stage state; 2..=9 = (a, b, c, d) for (ω, j).
        const Y_W: usize = 0;
        const Y_J: usize = 1;
        const A: usize = 2;
        const B: usize = 4;
        const C: usize = 6;
        const D: usize = 8;

        self.stages[Y_W].copy_from_slice(w0);
        self.stages[Y_J].copy_from_slice(j0);
        self.quadratic(Y_W, Y_J, A, A + 1);

        let half = 0.5 * dt;
        {
            let f = self.factors.as_ref().expect("prepared");
            let [yw, yj, aw, aj, ..] = &mut self.stages;
            for i in 0..len {
                yw[i] = (w0[i] + aw[i] * half) * f.omega_half[i];
                yj[i] = (j0[i] + aj[i] * half) * f.j_half[i];
            }
        }
        self.quadratic(Y_W, Y_J, B, B + 1);
        {
            let f = self.factors.as_ref().expect("prepared");
            let [yw, yj, _, _, bw, bj, ..] = &mut self.stages;
            for i in 0..len {
                yw[i] = w0[i] * f.omega_half[i] + bw[i] * half;
                yj[i] = j0[i] * f.j_half[i] + bj[i] * half;
            }
        }
        self.quadratic(Y_W, Y_J, C, C + 1);
        {
            let f = self.factors.as_ref().expect("prepared");
            let [yw, yj, _, _, _, _, cw, cj, ..] = &mut self.stages;
            for i in 0..len {
                yw[i] = w0[i] * f.omega_full[i] + cw[i] * (dt * f.omega_half[i]);
                yj[i] = j0[i] * f.j_full[i] + cj[i] * (dt * f.j_half[i]);
            }
        }
        self.quadratic(Y_W, Y_J, D, D + 1);

        let f = self.factors.as_ref().expect("prepared");
        let [_, _, aw, aj, bw, bj, cw, cj, dw, dj] = &self.stages;
        let sixth = dt / 6.0;
        let mut w1 = Vec::with_capacity(len);
        let mut j1 = Vec::with_capacity(len);
        for i in 0..len {
            let (ew, ehw) = (f.omega_full[i], f.omega_half[i]);
            let (ej, ehj) = (f.j_full[i], f.j_half[i]);
            w1.push(w0[i] * ew + (aw[i] * ew + (bw[i] + cw[i]) * (2.0 * ehw) + dw[i]) * sixth);
            j1.push(j0[i] * ej + (aj[i] * ej + (bj[i] + cj[i]) * (2.0 * ehj) + dj[i]) * sixth);
        }
        let time = state.time + dt;
        let next = MhdState {
            omega_hat: SpectralField::from_coeffs(self.grid, w1)?,
            j_hat: SpectralField::from_coeffs(self.grid, j1)?,
            time,
        };
        if !next.is_finite() {
            return Err(Error::NonFinite { time });
        }
        Ok(next)
    }
}

/// One integrating-factor RK4 step with a freshly built [`Integrator`].
pub fn step(state: &MhdState, dt: f64, params: &PhysParams) -> Result<MhdState> {
    Integrator::new(state.grid(), *params).step(state, dt)
}

/// Advective time step `courant · h / max(‖u‖_∞ + ‖b‖_∞, floor)`, capped at
/// `dt_max`. Dissipation is integrated exactly and imposes no limit.
pub fn cfl_dt(state: &MhdState, courant: f64, dt_max: f64) -> Result<f64> {
    if !(courant > 0.0 && courant <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "courant number must lie in (0, 1], got {courant}"
        )));
    }
    if dt_max.is_nan() || dt_max <= 0.0 {
        return Err(Error::InvalidParameter(format!("dt_max must be positive, got {dt_max}")));
    }
    let grid = state.grid();
    let u = velocity_from_vorticity(&state.omega_hat)?;
    let b = velocity_from_vorticity(&state.j_hat)?;
    let mut fft = Fft2::new(grid);
    let len = grid.len();
    let mut buf = vec![ZERO; len];
    let (mut x, mut y) = (vec![0.0; len], vec![0.0; len]);
    let mut speed = |f: &VectorPair| {
        inverse_pair_into(&mut fft, f.0.coeffs(), f.1.coeffs(), &mut buf, &mut x, &mut y);
        x.iter().zip(&y).map(|(a, b)| a.hypot(*b)).fold(0.0, f64::max)
    };
    let max_speed = speed(&(&u.comp1, &u.comp2)) + speed(&(&b.comp1, &b.comp2));
    let dt = courant * grid.spacing() / max_speed.max(CFL_SPEED_FLOOR);
    Ok(dt.min(dt_max))
}

type VectorPair<'a> = (&'a SpectralField, &'a SpectralField);
