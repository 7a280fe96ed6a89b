use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{dissipation_rate, kinetic_energy, magnetic_energy, MhdState, PhysParams};
use crate::spectral::transform::{inverse_pair_into, Fft2};
use crate::spectral::{lp_norm, sobolev_seminorm_sq, RealSamples};
use crate::{Error, Result};

/// One time sample of every monitored quantity. Squared `L²` norms unless
/// noted. `lemma2_*` are `None` when `r = α + β − 1 ≤ 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub energy_u: f64,
    pub energy_b: f64,
    pub enstrophy: f64,
    pub sq_current: f64,
    /// `‖Λ^α ω‖²`
    pub diss_omega: f64,
    /// `‖Λ^β j‖²`
    pub diss_j: f64,
    /// `‖Λ^r j‖²`
    pub lemma2_norm: Option<f64>,
    /// `‖Λ^{β+r} j‖²`
    pub lemma2_diss: Option<f64>,
    pub omega_inf: f64,
    pub j_inf: f64,
    /// `‖ω‖_{L^p}` (not squared) for the configured `p`.
    pub omega_lp: f64,
    /// `∫₀^t (‖ω‖_∞ + ‖j‖_∞) dτ`
    pub bkm_integral: f64,
    /// `‖ω‖² + ‖j‖² + ∫(‖Λ^α ω‖² + ‖Λ^β j‖²)`
    pub lemma1_functional: f64,
    /// `‖Λ^r j‖² + ∫‖Λ^{β+r} j‖²`
    pub lemma2_functional: Option<f64>,
    /// `E(t) − E(0) + 2∫(ν‖Λ^α u‖² + κ‖Λ^β b‖²)` with `E = ‖u‖² + ‖b‖²`.
    pub energy_balance_residual: f64,
    /// Share of `‖u‖² + ‖b‖²` carried by modes with `max(|k₁|,|k₂|) > n/4`.
    pub spectral_tail_fraction: f64,
    /// `‖∇ω‖²`
    pub grad_omega_sq: f64,
    /// `‖∇j‖²`
    pub grad_j_sq: f64,
}

pub const CSV_COLUMNS: [&str; 19] = [
    "t",
    "energy_u",
    "energy_b",
    "enstrophy",
    "sq_current",
    "diss_omega",
    "diss_j",
    "lemma2_norm",
    "lemma2_diss",
    "omega_inf",
    "j_inf",
    "omega_lp",
    "bkm_integral",
    "lemma1_functional",
    "lemma2_functional",
    "energy_balance_residual",
    "spectral_tail_fraction",
    "grad_omega_sq",
    "grad_j_sq",
];

impl DiagnosticsRecord {
    pub fn total_energy(&self) -> f64 {
        self.energy_u + self.energy_b
    }

    /// False when any value is NaN or infinite.
    pub fn is_finite(&self) -> bool {
        self.values().iter().all(|v| v.is_none_or(f64::is_finite))
    }

    /// Values in [`CSV_COLUMNS`] order.
    pub fn values(&self) -> [Option<f64>; 19] {
        [
            Some(self.t),
            Some(self.energy_u),
            Some(self.energy_b),
            Some(self.enstrophy),
            Some(self.sq_current),
            Some(self.diss_omega),
            Some(self.diss_j),
            self.lemma2_norm,
            self.lemma2_diss,
            Some(self.omega_inf),
            Some(self.j_inf),
            Some(self.omega_lp),
            Some(self.bkm_integral),
            Some(self.lemma1_functional),
            self.lemma2_functional,
            Some(self.energy_balance_residual),
            Some(self.spectral_tail_fraction),
            Some(self.grad_omega_sq),
            Some(self.grad_j_sq),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
struct Integrands {
    t: f64,
    lemma1: f64,
    lemma2: f64,
    bkm: f64,
    energy: f64,
}

/// Running time integrals, advanced by the trapezoid rule between
/// consecutive samples. One per run; serialisable so that a resumed run
/// continues the same integrals.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Accumulators {
    last: Option<Integrands>,
    initial_energy: Option<f64>,
    lemma1: f64,
    lemma2: f64,
    bkm: f64,
    dissipated: f64,
}

impl Accumulators {
    pub fn new() -> Self {
        Self::default()
    }

    fn advance(&mut self, now: Integrands) {
        if let Some(prev) = self.last {
            let h = 0.5 * (now.t - prev.t);
            self.lemma1 += h * (prev.lemma1 + now.lemma1);
            self.lemma2 += h * (prev.lemma2 + now.lemma2);
            self.bkm += h * (prev.bkm + now.bkm);
            self.dissipated += h * (prev.energy + now.energy);
        }
        self.last = Some(now);
    }
}

/// Computes every monitored quantity for `state` and advances the time
/// integrals in `acc` from the previous sample.
pub fn sample(
    state: &MhdState,
    params: &PhysParams,
    lp_exponent: f64,
    acc: &mut Accumulators,
) -> Result<DiagnosticsRecord> {
    if let Some(prev) = acc.last {
        if state.time < prev.t {
            return Err(Error::InvalidParameter(format!(
                "samples must be taken in time order ({} after {})",
                state.time, prev.t
            )));
        }
    }
    let (w, j) = (&state.omega_hat, &state.j_hat);
    let grid = state.grid();
    let energy_u = kinetic_energy(state);
    let energy_b = magnetic_energy(state);
    let enstrophy = sobolev_seminorm_sq(w, 0.0)?;
    let sq_current = sobolev_seminorm_sq(j, 0.0)?;
    let diss_omega = sobolev_seminorm_sq(w, params.alpha)?;
    let diss_j = sobolev_seminorm_sq(j, params.beta)?;
    let r = params.r();
    let (lemma2_norm, lemma2_diss) = if r > 0.0 {
        (
            Some(sobolev_seminorm_sq(j, r)?),
            Some(sobolev_seminorm_sq(j, params.beta + r)?),
        )
    } else {
        (None, None)
    };

    let len = grid.len();
    let mut fft = Fft2::new(grid);
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    let (mut wx, mut jx) = (vec![0.0; len], vec![0.0; len]);
    inverse_pair_into(&mut fft, w.coeffs(), j.coeffs(), &mut buf, &mut wx, &mut jx);
    let omega_samples = RealSamples::from_values(grid, wx)?;
    let omega_inf = omega_samples.max_abs();
    let j_inf = jx.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let omega_lp = lp_norm(&omega_samples, lp_exponent)?;

    let quarter = (grid.n() / 4) as i64;
    let (mut tail, mut total) = (0.0, 0.0);
    for idx in 0..len {
        let (k1, k2) = grid.wavevector(idx);
        let k_sq = (k1 * k1 + k2 * k2) as f64;
        if k_sq == 0.0 {
            continue;
        }
        let e = (w.coeffs()[idx].norm_sqr() + j.coeffs()[idx].norm_sqr()) / k_sq;
        total += e;
        if k1.abs().max(k2.abs()) > quarter {
            tail += e;
        }
    }
    let spectral_tail_fraction = if total > 0.0 { tail / total } else { 0.0 };

    let energy = energy_u + energy_b;
    let initial_energy = *acc.initial_energy.get_or_insert(energy);
    acc.advance(Integrands {
        t: state.time,
        lemma1: diss_omega + diss_j,
        lemma2: lemma2_diss.unwrap_or(0.0),
        bkm: omega_inf + j_inf,
        energy: dissipation_rate(state, params)?,
    });

    Ok(DiagnosticsRecord {
        t: state.time,
        energy_u,
        energy_b,
        enstrophy,
        sq_current,
        diss_omega,
        diss_j,
        lemma2_norm,
        lemma2_diss,
        omega_inf,
        j_inf,
        omega_lp,
        bkm_integral: acc.bkm,
        lemma1_functional: enstrophy + sq_current + acc.lemma1,
        lemma2_functional: lemma2_norm.map(|n| n + acc.lemma2),
        energy_balance_residual: energy - initial_energy + 2.0 * acc.dissipated,
        spectral_tail_fraction,
        grad_omega_sq: sobolev_seminorm_sq(w, 1.0)?,
        grad_j_sq: sobolev_seminorm_sq(j, 1.0)?,
    })
}

/// CSV sink: header of [`CSV_COLUMNS`], 17 significant digits, empty cells
/// for not-applicable values.
pub struct DiagnosticsCsv<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> DiagnosticsCsv<W> {
    pub fn new(inner: W) -> Result<Self> {
        let mut writer = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::Necessary)
            .from_writer(inner);
        writer.write_record(CSV_COLUMNS)?;
        Ok(Self { writer })
    }

    pub fn write(&mut self, record: &DiagnosticsRecord) -> Result<()> {
        let cells = record.values().map(|v| v.map_or(String::new(), format_value));
        self.writer.write_record(&cells)?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.writer.flush()?;
        Ok(())
    }

    pub fn into_inner(self) -> Result<W> {
        self.writer
            .into_inner()
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
    }
}

fn format_value(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}
