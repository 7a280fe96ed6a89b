use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::{InitialCondition, PhysParams};
use crate::spectral::GridSpec;
use crate::{Error, Result};

/// Smallest grid accepted for a run.
pub const MIN_RUN_GRID: usize = 16;

/// Time step: a fixed value or `"auto"` (advective CFL limit).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepSize {
    Fixed(f64),
    Auto,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum StepSizeRepr {
    Fixed(f64),
    Keyword(String),
}

impl Serialize for StepSize {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Self::Fixed(dt) => StepSizeRepr::Fixed(dt),
            Self::Auto => StepSizeRepr::Keyword("auto".into()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StepSize {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match StepSizeRepr::deserialize(deserializer)? {
            StepSizeRepr::Fixed(dt) => Ok(Self::Fixed(dt)),
            StepSizeRepr::Keyword(k) if k == "auto" => Ok(Self::Auto),
            StepSizeRepr::Keyword(k) => Err(serde::de::Error::custom(format!(
                "dt must be a number or \"auto\", got \"{k}\""
            ))),
        }
    }
}

impl fmt::Display for StepSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Fixed(dt) => write!(f, "{dt}"),
            Self::Auto => f.write_str("auto"),
        }
    }
}

fn default_seed() -> u64 {
    0
}

fn default_amplitude() -> f64 {
    1.0
}

fn default_dt_max() -> f64 {
    1e-2
}

fn default_lp_exponent() -> f64 {
    4.0
}

/// Initial data. When `energy` is given the fields are rescaled so that
/// `‖u‖² + ‖b‖² = energy` after being built with `amplitude`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IcSpec {
    pub kind: InitialCondition,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy: Option<f64>,
}

/// One simulation, read from a single JSON document. Unknown keys are
/// rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid_n: usize,
    pub alpha: f64,
    pub beta: f64,
    /// Defaults to 1 when `alpha > 0`, else 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    /// Defaults to 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    pub t_end: f64,
    pub dt: StepSize,
    /// Required when `dt` is `"auto"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub courant: Option<f64>,
    /// Upper bound on automatic steps.
    #[serde(default = "default_dt_max")]
    pub dt_max: f64,
    pub ic: IcSpec,
    pub diag_interval: f64,
    #[serde(default = "default_lp_exponent")]
    pub lp_exponent: f64,
    pub output_dir: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoint_interval: Option<f64>,
    /// Checkpoint metadata file to continue from instead of `ic`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resume_from: Option<PathBuf>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::ConfigInvalid(msg.into())
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be a positive finite number, got {v}")))
    }
}

fn non_negative(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be a non-negative finite number, got {v}")))
    }
}

impl RunConfig {
    /// Parses and validates a JSON document.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| invalid(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json_str(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_n < MIN_RUN_GRID || !self.grid_n.is_multiple_of(2) {
            return Err(invalid(format!(
                "grid_n must be even and at least {MIN_RUN_GRID}, got {}",
                self.grid_n
            )));
        }
        non_negative("alpha", self.alpha)?;
        non_negative("beta", self.beta)?;
        if let Some(nu) = self.nu {
            non_negative("nu", nu)?;
        }
        if let Some(kappa) = self.kappa {
            non_negative("kappa", kappa)?;
        }
        non_negative("t_end", self.t_end)?;
        match self.dt {
            StepSize::Fixed(dt) => positive("dt", dt)?,
            StepSize::Auto => match self.courant {
                Some(c) if c > 0.0 && c <= 1.0 => {}
                Some(c) => return Err(invalid(format!("courant must lie in (0, 1], got {c}"))),
                None => return Err(invalid("dt = \"auto\" requires courant")),
            },
        }
        positive("dt_max", self.dt_max)?;
        positive("diag_interval", self.diag_interval)?;
        if self.t_end > 0.0 && self.diag_interval > self.t_end {
            return Err(invalid(format!(
                "diag_interval {} exceeds t_end {}",
                self.diag_interval, self.t_end
            )));
        }
        if self.lp_exponent.is_nan() || self.lp_exponent < 2.0 {
            return Err(invalid(format!("lp_exponent must be at least 2, got {}", self.lp_exponent)));
        }
        if !self.ic.amplitude.is_finite() {
            return Err(invalid(format!("ic.amplitude must be finite, got {}", self.ic.amplitude)));
        }
        if let Some(e) = self.ic.energy {
            positive("ic.energy", e)?;
        }
        if let Some(c) = self.checkpoint_interval {
            positive("checkpoint_interval", c)?;
        }
        if self.output_dir.as_os_str().is_empty() {
            return Err(invalid("output_dir must not be empty"));
        }
        self.phys_params()?;
        Ok(())
    }

    pub fn grid(&self) -> Result<GridSpec> {
        GridSpec::new(self.grid_n).map_err(|e| invalid(e.to_string()))
    }

    /// Coefficients with the defaults filled in.
    pub fn phys_params(&self) -> Result<PhysParams> {
        let defaults = PhysParams::new(self.alpha, self.beta).map_err(|e| invalid(e.to_string()))?;
        PhysParams::with_coefficients(
            self.nu.unwrap_or(defaults.nu),
            self.kappa.unwrap_or(defaults.kappa),
            self.alpha,
            self.beta,
        )
        .map_err(|e| invalid(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "grid_n": 32, "alpha": 0.4, "beta": 1.2, "t_end": 1.0, "dt": 0.01,
        "ic": {"kind": "orszag-tang-like"}, "diag_interval": 0.1,
        "output_dir": "out"
    }"#;

    fn with(key: &str, value: serde_json::Value) -> String {
        let mut v: serde_json::Value = serde_json::from_str(BASE).unwrap();
        v[key] = value;
        v.to_string()
    }

    #[test]
    fn parses_minimal_document_with_defaults() {
        let c = RunConfig::from_json_str(BASE).unwrap();
        assert_eq!(c.dt, StepSize::Fixed(0.01));
        assert_eq!(c.ic.seed, 0);
        assert_eq!(c.ic.amplitude, 1.0);
        assert_eq!(c.lp_exponent, 4.0);
        let p = c.phys_params().unwrap();
        assert_eq!((p.nu, p.kappa), (1.0, 1.0));
    }

    #[test]
    fn inviscid_default_when_alpha_is_zero() {
        let c = RunConfig::from_json_str(&with("alpha", 0.0.into())).unwrap();
        assert_eq!(c.phys_params().unwrap().nu, 0.0);
    }

    #[test]
    fn auto_step_needs_courant_in_range() {
        assert!(matches!(
            RunConfig::from_json_str(&with("dt", "auto".into())),
            Err(Error::ConfigInvalid(_))
        ));
        let mut v: serde_json::Value = serde_json::from_str(BASE).unwrap();
        v["dt"] = "auto".into();
        v["courant"] = 1.5.into();
        assert!(RunConfig::from_json_str(&v.to_string()).is_err());
        v["courant"] = 0.5.into();
        assert_eq!(RunConfig::from_json_str(&v.to_string()).unwrap().dt, StepSize::Auto);
        assert!(RunConfig::from_json_str(&with("dt", "fast".into())).is_err());
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        for bad in [
            with("grdi_n", 32.into()),
            with("grid_n", 8.into()),
            with("grid_n", 34.into()).replace("34", "33"),
            with("diag_interval", 2.0.into()),
            with("lp_exponent", 1.5.into()),
            with("t_end", (-1.0).into()),
            with("dt", 0.0.into()),
        ] {
            assert!(matches!(RunConfig::from_json_str(&bad), Err(Error::ConfigInvalid(_))), "{bad}");
        }
    }

    #[test]
    fn zero_end_time_allows_any_interval() {
        assert!(RunConfig::from_json_str(&with("t_end", 0.0.into())).is_ok());
    }

    #[test]
    fn round_trips_through_json() {
        let c = RunConfig::from_json_str(&with("dt", "auto".into()).replace("\"dt\"", "\"courant\":0.4,\"dt\"")).unwrap();
        let again = RunConfig::from_json_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(c, again);
    }
}
