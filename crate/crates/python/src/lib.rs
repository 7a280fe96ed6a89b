//! Python bindings: region classification, an interactive `Simulation`
//! object, and the JSON-driven `run`, `sweep` and `verify` entry points.

use std::path::PathBuf;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fracmhd::diagnostics::{classify_region as classify, sample, Accumulators};
use fracmhd::dynamics::{
    cfl_dt, cross_helicity, init_condition, kinetic_energy, magnetic_energy, mean_square_potential,
    normalize_energy, read_checkpoint, total_energy, write_checkpoint, InitialCondition, Integrator, MhdState,
    PhysParams,
};
use fracmhd::harness::{self, RunConfig, SweepSpec, VerifyOptions};
use fracmhd::spectral::{inverse_transform, GridSpec, SpectralField};
use fracmhd::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NonFinite { .. } | Error::ResolutionLoss { .. } | Error::Io(_) | Error::Checkpoint { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// Returns `(region, detail)` for the exponent pair.
#[pyfunction]
fn classify_region(alpha: f64, beta: f64) -> (String, String) {
    let v = classify(alpha, beta);
    (v.region.to_string(), v.detail)
}

/// Runs a simulation from a JSON configuration document and returns the
/// summary as JSON.
#[pyfunction]
fn run(py: Python<'_>, config_json: &str) -> PyResult<String> {
    let config = RunConfig::from_json_str(config_json).map_err(to_py)?;
    let summary = py.detach(|| harness::run(&config)).map_err(to_py)?;
    serde_json::to_string(&summary).map_err(json_err)
}

/// Runs a parameter sweep from a JSON document and returns the report as
/// JSON.
#[pyfunction]
fn sweep(py: Python<'_>, spec_json: &str) -> PyResult<String> {
    let spec = SweepSpec::from_json_str(spec_json).map_err(to_py)?;
    let report = py.detach(|| harness::sweep(&spec)).map_err(to_py)?;
    serde_json::to_string(&report).map_err(json_err)
}

/// Runs the property suite; returns `(passed, report_text)`.
#[pyfunction]
#[pyo3(signature = (filter=None))]
fn verify(py: Python<'_>, filter: Option<String>) -> (bool, String) {
    let report = py.detach(|| {
        harness::verify(&VerifyOptions {
            filter,
            ..Default::default()
        })
    });
    (report.passed(), report.to_string())
}

fn grid_values(field: &SpectralField) -> PyResult<Vec<Vec<f64>>> {
    let samples = inverse_transform(field).map_err(to_py)?;
    let n = field.grid().n();
    Ok(samples.values().chunks(n).map(<[f64]>::to_vec).collect())
}

/// A vorticity/current state advanced in place.
#[pyclass(module = "fracmhd_py")]
struct Simulation {
    state: MhdState,
    params: PhysParams,
    integrator: Integrator,
    accumulators: Accumulators,
}

impl Simulation {
    fn from_state(state: MhdState, params: PhysParams) -> Self {
        let integrator = Integrator::new(state.grid(), params);
        Self {
            state,
            params,
            integrator,
            accumulators: Accumulators::new(),
        }
    }
}

#[pymethods]
impl Simulation {
    #[new]
    #[pyo3(signature = (grid_n, alpha, beta, ic="orszag-tang-like", seed=0, amplitude=1.0, energy=None, nu=None, kappa=None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        grid_n: usize,
        alpha: f64,
        beta: f64,
        ic: &str,
        seed: u64,
        amplitude: f64,
        energy: Option<f64>,
        nu: Option<f64>,
        kappa: Option<f64>,
    ) -> PyResult<Self> {
        let grid = GridSpec::new(grid_n).map_err(to_py)?;
        let defaults = PhysParams::new(alpha, beta).map_err(to_py)?;
        let params = PhysParams::with_coefficients(
            nu.unwrap_or(defaults.nu),
            kappa.unwrap_or(defaults.kappa),
            alpha,
            beta,
        )
        .map_err(to_py)?;
        let kind: InitialCondition = ic.parse().map_err(to_py)?;
        let mut state = init_condition(kind, grid, seed, amplitude).map_err(to_py)?;
        if let Some(e) = energy {
            state = normalize_energy(&state, e).map_err(to_py)?;
        }
        Ok(Self::from_state(state, params))
    }

    /// Restores a simulation from a checkpoint metadata file.
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        let (state, params) = read_checkpoint(&path).map_err(to_py)?;
        Ok(Self::from_state(state, params))
    }

    /// Writes `<stem>.json` and `<stem>.bin`; returns the metadata path.
    fn save(&self, stem: PathBuf) -> PyResult<PathBuf> {
        write_checkpoint(&stem, &self.state, &self.params).map_err(to_py)
    }

    #[getter]
    fn time(&self) -> f64 {
        self.state.time
    }

    #[getter]
    fn grid_n(&self) -> usize {
        self.state.grid().n()
    }

    #[getter]
    fn params(&self) -> (f64, f64, f64, f64) {
        let p = &self.params;
        (p.nu, p.kappa, p.alpha, p.beta)
    }

    /// Advances by `count` steps of size `dt`.
    #[pyo3(signature = (dt, count=1))]
    fn step(&mut self, py: Python<'_>, dt: f64, count: usize) -> PyResult<f64> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(PyValueError::new_err(format!("dt must be positive, got {dt}")));
        }
        let Self { state, integrator, .. } = self;
        let next = py.detach(|| {
            let mut s = state.clone();
            for _ in 0..count {
                s = integrator.step(&s, dt)?;
            }
            Ok::<_, Error>(s)
        });
        self.state = next.map_err(to_py)?;
        Ok(self.state.time)
    }

    /// Advective time step for the current state.
    #[pyo3(signature = (courant=0.5, dt_max=0.01))]
    fn cfl_dt(&self, courant: f64, dt_max: f64) -> PyResult<f64> {
        cfl_dt(&self.state, courant, dt_max).map_err(to_py)
    }

    /// Energies, cross helicity and mean-square potential.
    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        let s = &self.state;
        d.set_item("energy", total_energy(s))?;
        d.set_item("kinetic_energy", kinetic_energy(s))?;
        d.set_item("magnetic_energy", magnetic_energy(s))?;
        d.set_item("cross_helicity", cross_helicity(s))?;
        d.set_item("mean_square_potential", mean_square_potential(s))?;
        Ok(d)
    }

    /// Diagnostics record for the current state. Time integrals accumulate
    /// over successive calls.
    #[pyo3(signature = (lp_exponent=4.0))]
    fn diagnostics<'py>(&mut self, py: Python<'py>, lp_exponent: f64) -> PyResult<Bound<'py, PyDict>> {
        let record = sample(&self.state, &self.params, lp_exponent, &mut self.accumulators).map_err(to_py)?;
        let value = serde_json::to_value(&record).map_err(json_err)?;
        let d = PyDict::new(py);
        if let serde_json::Value::Object(map) = value {
            for (k, v) in map {
                d.set_item(k, v.as_f64())?;
            }
        }
        Ok(d)
    }

    /// Vorticity on the grid, as `grid_n` rows.
    fn vorticity(&self) -> PyResult<Vec<Vec<f64>>> {
        grid_values(&self.state.omega_hat)
    }

    /// Current density on the grid, as `grid_n` rows.
    fn current(&self) -> PyResult<Vec<Vec<f64>>> {
        grid_values(&self.state.j_hat)
    }

    fn __repr__(&self) -> String {
        format!(
            "Simulation(grid_n={}, alpha={}, beta={}, t={})",
            self.state.grid().n(),
            self.params.alpha,
            self.params.beta,
            self.state.time
        )
    }
}

#[pymodule]
fn fracmhd_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(classify_region, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_class::<Simulation>()?;
    Ok(())
}
