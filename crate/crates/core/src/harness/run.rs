use std::fmt;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{RunConfig, StepSize};
use crate::diagnostics::{sample, Accumulators, DiagnosticsCsv, DiagnosticsRecord};
use crate::dynamics::{
    cfl_dt, init_condition, normalize_energy, read_checkpoint, write_checkpoint, Integrator,
    MhdState, PhysParams,
};
use crate::{Error, Result};

/// Spectral tail share above which a run is stopped as under-resolved.
pub const TAIL_THRESHOLD: f64 = 1e-3;

pub const CSV_FILE: &str = "diagnostics.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const TIMING_FILE: &str = "timing.json";
pub const FINAL_CHECKPOINT: &str = "final";

/// Event times closer than this fraction of a step are merged with it.
const SNAP: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Completed,
    /// The spectral tail exceeded [`TAIL_THRESHOLD`].
    ResolutionLoss,
    /// The state stopped being finite.
    NonFinite,
}

impl RunStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Completed => "completed",
            Self::ResolutionLoss => "resolution-loss",
            Self::NonFinite => "non-finite",
        }
    }

    /// `"resolved"` for completed runs, `"unresolved"` otherwise. A failed
    /// run says nothing about the continuous problem.
    pub fn verdict(&self) -> &'static str {
        match self {
            Self::Completed => "resolved",
            _ => "unresolved",
        }
    }
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Largest value over all samples of each monitored quantity.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NormMaxima {
    pub energy_u: f64,
    pub energy_b: f64,
    pub enstrophy: f64,
    pub sq_current: f64,
    pub diss_omega: f64,
    pub diss_j: f64,
    pub lemma2_norm: Option<f64>,
    pub lemma2_diss: Option<f64>,
    pub omega_inf: f64,
    pub j_inf: f64,
    pub omega_lp: f64,
    pub grad_omega_sq: f64,
    pub grad_j_sq: f64,
}

fn max_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, y) => x.or(y),
    }
}

impl NormMaxima {
    fn update(&mut self, r: &DiagnosticsRecord) {
        self.energy_u = self.energy_u.max(r.energy_u);
        self.energy_b = self.energy_b.max(r.energy_b);
        self.enstrophy = self.enstrophy.max(r.enstrophy);
        self.sq_current = self.sq_current.max(r.sq_current);
        self.diss_omega = self.diss_omega.max(r.diss_omega);
        self.diss_j = self.diss_j.max(r.diss_j);
        self.lemma2_norm = max_opt(self.lemma2_norm, r.lemma2_norm);
        self.lemma2_diss = max_opt(self.lemma2_diss, r.lemma2_diss);
        self.omega_inf = self.omega_inf.max(r.omega_inf);
        self.j_inf = self.j_inf.max(r.j_inf);
        self.omega_lp = self.omega_lp.max(r.omega_lp);
        self.grad_omega_sq = self.grad_omega_sq.max(r.grad_omega_sq);
        self.grad_j_sq = self.grad_j_sq.max(r.grad_j_sq);
    }
}

/// Outcome of a run, written to `summary.json`. Everything in it is a
/// deterministic function of the configuration; wall-clock time goes to
/// `timing.json` instead.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub status: RunStatus,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub grid_n: usize,
    pub params: PhysParams,
    pub t_start: f64,
    pub t_final: f64,
    pub steps: u64,
    pub samples: u64,
    pub max: NormMaxima,
    pub final_bkm_integral: f64,
    pub final_lemma1_functional: f64,
    pub final_lemma2_functional: Option<f64>,
    pub final_energy_balance_residual: f64,
    pub max_spectral_tail_fraction: f64,
    /// `‖u‖² + ‖b‖²` never increased between consecutive samples.
    pub energy_non_increasing: bool,
    #[serde(skip)]
    pub wall_clock_seconds: f64,
}

#[derive(Serialize)]
struct Timing {
    wall_clock_seconds: f64,
}

fn sidecar_path(checkpoint_json: &Path) -> PathBuf {
    let stem = checkpoint_json.with_extension("");
    let mut name = stem.file_name().unwrap_or_default().to_os_string();
    name.push(".accumulators.json");
    stem.with_file_name(name)
}

/// Writes a checkpoint plus the diagnostic integrals needed to continue it.
fn save_checkpoint(stem: &Path, state: &MhdState, params: &PhysParams, acc: &Accumulators) -> Result<PathBuf> {
    let path = write_checkpoint(stem, state, params)?;
    fs::write(sidecar_path(&path), serde_json::to_string(acc)?)?;
    Ok(path)
}

fn initial_state(config: &RunConfig, params: &PhysParams) -> Result<(MhdState, Accumulators)> {
    let grid = config.grid()?;
    if let Some(path) = &config.resume_from {
        let (state, saved) = read_checkpoint(path)?;
        if state.grid() != grid {
            return Err(Error::ConfigInvalid(format!(
                "checkpoint grid n = {} does not match grid_n = {}",
                state.grid().n(),
                grid.n()
            )));
        }
        if saved != *params {
            return Err(Error::ConfigInvalid(format!(
                "checkpoint parameters {saved:?} differ from the configuration {params:?}"
            )));
        }
        let sidecar = sidecar_path(path);
        let acc = if sidecar.exists() {
            serde_json::from_str(&fs::read_to_string(sidecar)?)?
        } else {
            Accumulators::new()
        };
        return Ok((state, acc));
    }
    let ic = &config.ic;
    let mut state = init_condition(ic.kind, grid, ic.seed, ic.amplitude)?;
    if let Some(energy) = ic.energy {
        state = normalize_energy(&state, energy)?;
    }
    Ok((state, Accumulators::new()))
}

/// Evenly spaced event times `k · interval`, computed by index so that no
/// rounding accumulates.
struct EventClock {
    interval: f64,
    next: u64,
}

impl EventClock {
    fn new(interval: f64, after: f64) -> Self {
        let next = (after / interval * (1.0 + SNAP)).floor() as u64 + 1;
        Self { interval, next }
    }

    /// Next event time; an event within the snapping distance of `t_end`
    /// is moved onto it.
    fn time(&self, t_end: f64) -> f64 {
        let t = self.next as f64 * self.interval;
        if (t - t_end).abs() <= SNAP * self.interval {
            t_end
        } else {
            t
        }
    }
}

/// Runs one simulation, writing `diagnostics.csv`, a final checkpoint,
/// `summary.json` and `timing.json` into `output_dir`.
///
/// Resolution loss and non-finite states end the run early and are
/// reported through [`RunSummary::status`]; `Err` is returned only for
/// invalid configurations and I/O failures.
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    let started = Instant::now();
    config.validate()?;
    let params = config.phys_params()?;
    let grid = config.grid()?;
    let (mut state, mut acc) = initial_state(config, &params)?;
    let t_start = state.time;
    if config.t_end < t_start {
        return Err(Error::ConfigInvalid(format!(
            "t_end {} precedes the resume time {t_start}",
            config.t_end
        )));
    }
    fs::create_dir_all(&config.output_dir)?;
    let mut csv = DiagnosticsCsv::new(BufWriter::new(File::create(config.output_dir.join(CSV_FILE))?))?;

    let mut maxima = NormMaxima::default();
    let mut status = RunStatus::Completed;
    let mut message = None;
    let mut samples = 0u64;
    let mut max_tail: f64 = 0.0;
    let mut last_energy: Option<f64> = None;
    let mut energy_non_increasing = true;

    let mut record_sample = |state: &MhdState, acc: &mut Accumulators| -> Result<DiagnosticsRecord> {
        let rec = sample(state, &params, config.lp_exponent, acc)?;
        csv.write(&rec)?;
        samples += 1;
        maxima.update(&rec);
        max_tail = max_tail.max(rec.spectral_tail_fraction);
        let e = rec.total_energy();
        if last_energy.is_some_and(|prev| e > prev) {
            energy_non_increasing = false;
        }
        last_energy = Some(e);
        Ok(rec)
    };

    let mut last = record_sample(&state, &mut acc)?;
    let mut steps = 0u64;
    if !last.is_finite() {
        status = RunStatus::NonFinite;
        message = Some(format!("initial diagnostics are non-finite at t = {t_start}"));
    } else if last.spectral_tail_fraction > TAIL_THRESHOLD {
        status = RunStatus::ResolutionLoss;
    }
    let mut integrator = Integrator::new(grid, params);
    let mut diag_clock = EventClock::new(config.diag_interval, t_start);
    let mut ckpt_clock = config.checkpoint_interval.map(|c| EventClock::new(c, t_start));
    let t_end = config.t_end;

    while status == RunStatus::Completed && state.time < t_end {
        let mut target = diag_clock.time(t_end).min(t_end);
        if let Some(c) = &ckpt_clock {
            target = target.min(c.time(t_end));
        }
        let proposed = match config.dt {
            StepSize::Fixed(dt) => dt,
            StepSize::Auto => cfl_dt(&state, config.courant.unwrap_or(1.0), config.dt_max)?,
        };
        let lands = state.time + proposed >= target - SNAP * proposed;
        let dt = if lands { target - state.time } else { proposed };
        match integrator.step(&state, dt) {
            Ok(mut next) => {
                if lands {
                    next.time = target;
                }
                state = next;
                steps += 1;
            }
            Err(Error::NonFinite { time }) => {
                status = RunStatus::NonFinite;
                message = Some(format!("state became non-finite in the step from t = {time}"));
                break;
            }
            Err(e) => return Err(e),
        }
        if !lands {
            continue;
        }
        let diag_due = target == diag_clock.time(t_end);
        if diag_due {
            diag_clock.next += 1;
        }
        if diag_due || target == t_end {
            last = record_sample(&state, &mut acc)?;
            if !last.is_finite() {
                status = RunStatus::NonFinite;
                message = Some(format!("diagnostics became non-finite at t = {}", state.time));
            } else if last.spectral_tail_fraction > TAIL_THRESHOLD {
                status = RunStatus::ResolutionLoss;
                message = Some(format!(
                    "spectral tail fraction {:.3e} exceeds {TAIL_THRESHOLD:e} at t = {}",
                    last.spectral_tail_fraction, state.time
                ));
            }
        }
        if let Some(c) = &mut ckpt_clock {
            if target == c.time(t_end) {
                c.next += 1;
                let stem = config.output_dir.join(format!("checkpoint_{:06}", c.next - 1));
                save_checkpoint(&stem, &state, &params, &acc)?;
            }
        }
    }
    if status == RunStatus::ResolutionLoss && message.is_none() {
        message = Some(format!(
            "spectral tail fraction {:.3e} exceeds {TAIL_THRESHOLD:e} at t = {}",
            last.spectral_tail_fraction, state.time
        ));
    }
    csv.flush()?;
    drop(csv);
    save_checkpoint(&config.output_dir.join(FINAL_CHECKPOINT), &state, &params, &acc)?;

    let summary = RunSummary {
        status,
        verdict: status.verdict().into(),
        message,
        grid_n: grid.n(),
        params,
        t_start,
        t_final: state.time,
        steps,
        samples,
        max: maxima,
        final_bkm_integral: last.bkm_integral,
        final_lemma1_functional: last.lemma1_functional,
        final_lemma2_functional: last.lemma2_functional,
        final_energy_balance_residual: last.energy_balance_residual,
        max_spectral_tail_fraction: max_tail,
        energy_non_increasing,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    };
    fs::write(
        config.output_dir.join(SUMMARY_FILE),
        serde_json::to_string_pretty(&summary)?,
    )?;
    fs::write(
        config.output_dir.join(TIMING_FILE),
        serde_json::to_string_pretty(&Timing {
            wall_clock_seconds: summary.wall_clock_seconds,
        })?,
    )?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::InitialCondition;
    use crate::harness::config::IcSpec;

    fn config(dir: &Path, t_end: f64) -> RunConfig {
        RunConfig {
            grid_n: 16,
            alpha: 1.0,
            beta: 1.0,
            nu: None,
            kappa: None,
            t_end,
            dt: StepSize::Fixed(0.03),
            courant: None,
            dt_max: 0.01,
            ic: IcSpec {
                kind: InitialCondition::OrszagTangLike,
                seed: 0,
                amplitude: 0.5,
                energy: None,
            },
            diag_interval: 0.1,
            lp_exponent: 4.0,
            output_dir: dir.to_owned(),
            checkpoint_interval: None,
            resume_from: None,
        }
    }

    #[test]
    fn samples_land_on_interval_multiples() {
        let dir = tempfile::tempdir().unwrap();
        let s = run(&config(dir.path(), 0.35)).unwrap();
        assert_eq!(s.status, RunStatus::Completed);
        assert_eq!(s.samples, 5);
        assert_eq!(s.t_final, 0.35);
        let text = fs::read_to_string(dir.path().join(CSV_FILE)).unwrap();
        let times: Vec<f64> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap().parse().unwrap())
            .collect();
        let expected = [0.0, 0.1, 0.2, 0.30000000000000004, 0.35];
        assert_eq!(times, expected);
        assert!(dir.path().join("final.json").exists());
        assert!(dir.path().join("final.bin").exists());
        assert!(dir.path().join(TIMING_FILE).exists());
    }

    #[test]
    fn summary_json_has_no_timing() {
        let dir = tempfile::tempdir().unwrap();
        run(&config(dir.path(), 0.1)).unwrap();
        let text = fs::read_to_string(dir.path().join(SUMMARY_FILE)).unwrap();
        assert!(!text.contains("wall_clock"));
        let parsed: RunSummary = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.status, RunStatus::Completed);
    }

    #[test]
    fn under_resolved_data_is_flagged() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = config(dir.path(), 0.1);
        let grid = c.grid().unwrap();
        // All energy at max|k| = 5 > n/4.
        let w = crate::spectral::SpectralField::cosine(grid, 5, 0, 1.0);
        let state = MhdState::new(w.clone(), w, 0.0).unwrap();
        let stem = dir.path().join("hot");
        c.resume_from = Some(write_checkpoint(&stem, &state, &c.phys_params().unwrap()).unwrap());
        let s = run(&c).unwrap();
        assert_eq!(s.status, RunStatus::ResolutionLoss);
        assert_eq!(s.verdict, "unresolved");
        assert_eq!(s.steps, 0);
    }

    #[test]
    fn sidecar_name_follows_stem() {
        assert_eq!(
            sidecar_path(Path::new("/a/final.json")),
            PathBuf::from("/a/final.accumulators.json")
        );
    }
}
