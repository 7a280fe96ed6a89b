use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use super::run::{run, RunStatus};
use crate::diagnostics::{classify_region, Region};
use crate::{Error, Result};

/// Environment variable overriding the sweep thread count.
pub const THREADS_ENV: &str = "FRACMHD_THREADS";

pub const REPORT_JSON: &str = "sweep_report.json";
pub const REPORT_CSV: &str = "sweep_report.csv";

fn default_parallelism() -> usize {
    1
}

/// Cartesian product of `alpha_values × beta_values`, each point run with
/// `base` (its `alpha`, `beta` and `output_dir` replaced).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub alpha_values: Vec<f64>,
    pub beta_values: Vec<f64>,
    pub base: RunConfig,
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
}

impl SweepSpec {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json_str(&fs::read_to_string(path)?)
    }

    /// Checks the sweep-level fields. Per-point configuration errors are
    /// reported in the sweep report instead.
    pub fn validate(&self) -> Result<()> {
        if self.parallelism == 0 {
            return Err(Error::ConfigInvalid("parallelism must be positive".into()));
        }
        if let Some(v) = self.alpha_values.iter().chain(&self.beta_values).find(|v| !v.is_finite()) {
            return Err(Error::ConfigInvalid(format!("sweep values must be finite, got {v}")));
        }
        if self.base.output_dir.as_os_str().is_empty() {
            return Err(Error::ConfigInvalid("base.output_dir must not be empty".into()));
        }
        Ok(())
    }

    /// `(α, β)` pairs in lexicographic order: α outer, β inner, each in the
    /// order given.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.alpha_values
            .iter()
            .flat_map(|&a| self.beta_values.iter().map(move |&b| (a, b)))
            .collect()
    }

    /// Thread count: `FRACMHD_THREADS` if set to a positive integer,
    /// otherwise `parallelism`.
    pub fn threads(&self) -> usize {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
            .unwrap_or(self.parallelism)
    }

    fn point_dir(index: usize, alpha: f64, beta: f64) -> String {
        format!("point_{index:04}_alpha_{alpha}_beta_{beta}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub alpha: f64,
    pub beta: f64,
    pub region: Region,
    pub status: Option<RunStatus>,
    pub max_omega_inf: Option<f64>,
    pub final_bkm_integral: Option<f64>,
    pub error: Option<String>,
    /// Run directory, relative to the sweep's `base.output_dir`.
    pub point_dir: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    /// True when every point completed.
    pub fn all_completed(&self) -> bool {
        self.entries.iter().all(|e| e.status == Some(RunStatus::Completed))
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "alpha",
            "beta",
            "region",
            "status",
            "max_omega_inf",
            "final_bkm_integral",
            "error",
        ])?;
        let num = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:.16e}"));
        for e in &self.entries {
            w.write_record([
                e.alpha.to_string(),
                e.beta.to_string(),
                e.region.to_string(),
                e.status.map_or(String::new(), |s| s.to_string()),
                num(e.max_omega_inf),
                num(e.final_bkm_integral),
                e.error.clone().unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn run_point(spec: &SweepSpec, index: usize, alpha: f64, beta: f64) -> SweepEntry {
    let mut config = spec.base.clone();
    config.alpha = alpha;
    config.beta = beta;
    let point_dir = SweepSpec::point_dir(index, alpha, beta);
    config.output_dir = spec.base.output_dir.join(&point_dir);
    let region = classify_region(alpha, beta).region;
    let mut entry = SweepEntry {
        alpha,
        beta,
        region,
        status: None,
        max_omega_inf: None,
        final_bkm_integral: None,
        error: None,
        point_dir,
    };
    match run(&config) {
        Ok(summary) => {
            entry.status = Some(summary.status);
            entry.max_omega_inf = Some(summary.max.omega_inf);
            entry.final_bkm_integral = Some(summary.final_bkm_integral);
            entry.error = summary.message;
        }
        Err(e) => entry.error = Some(e.to_string()),
    }
    entry
}

/// Runs every point and writes `sweep_report.json` / `sweep_report.csv`
/// into `base.output_dir`. Point failures are recorded, never propagated;
/// the report order is independent of the thread count.
pub fn sweep(spec: &SweepSpec) -> Result<SweepReport> {
    spec.validate()?;
    let points = spec.points();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.threads())
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let entries = pool.install(|| {
        points
            .par_iter()
            .enumerate()
            .map(|(i, &(a, b))| run_point(spec, i, a, b))
            .collect()
    });
    let report = SweepReport { entries };
    fs::create_dir_all(&spec.base.output_dir)?;
    fs::write(
        spec.base.output_dir.join(REPORT_JSON),
        serde_json::to_string_pretty(&report)?,
    )?;
    report.write_csv(fs::File::create(spec.base.output_dir.join(REPORT_CSV))?)?;
    Ok(report)
}
