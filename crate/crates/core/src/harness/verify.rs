//! Self-check suite: every structural property of the solver, evaluated at
//! fixed sizes with seeded data and reported with its measured margin.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagnostics::{classify_region, gn_ratio, positivity_integral, GnInequality, Region, POSITIVITY_TOLERANCE};
use crate::dynamics::{
    init_condition, random_band_field, read_checkpoint, rhs, velocity_from_vorticity, write_checkpoint,
    InitialCondition, Integrator, MhdState, PhysParams,
};
use crate::spectral::{
    dealias, forward_transform, fractional_power, inverse_transform, l2_norm, partial_derivative,
    pointwise_product_with_cutoff, Axis, GridSpec, RealSamples, SpectralField,
};
use crate::Result;

const SEED: u64 = 0x5eed;

/// How `measured` is compared with `tolerance`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    AtMost,
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub measured: f64,
    pub bound: Bound,
    pub tolerance: f64,
    pub passed: bool,
    /// Distance to the bound, positive when passing.
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl PropertyResult {
    fn measured(name: &str, measured: f64, bound: Bound, tolerance: f64) -> Self {
        let margin = match bound {
            Bound::AtMost => tolerance - measured,
            Bound::AtLeast => measured - tolerance,
        };
        Self {
            name: name.into(),
            measured,
            bound,
            tolerance,
            passed: margin >= 0.0 && measured.is_finite(),
            margin,
            error: None,
        }
    }

    fn failed(name: &str, bound: Bound, tolerance: f64, error: String) -> Self {
        Self {
            name: name.into(),
            measured: f64::NAN,
            bound,
            tolerance,
            passed: false,
            margin: f64::NAN,
            error: Some(error),
        }
    }
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let op = match self.bound {
            Bound::AtMost => "<=",
            Bound::AtLeast => ">=",
        };
        write!(
            f,
            "{verdict} {:<34} measured {:.6e} {op} {:.1e}",
            self.name, self.measured, self.tolerance
        )?;
        if let Some(e) = &self.error {
            write!(f, " ({e})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            writeln!(f, "{p}")?;
        }
        let failed = self.properties.iter().filter(|p| !p.passed).count();
        write!(f, "{} properties, {failed} failed", self.properties.len())
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Only properties whose name contains this substring.
    pub filter: Option<String>,
    /// Test hook: replaces the 2/3-rule cutoff used by the convolution
    /// property, to confirm that the suite detects a broken dealiaser.
    pub dealias_cutoff_override: Option<i64>,
}

struct Check {
    name: &'static str,
    bound: Bound,
    tolerance: f64,
    measure: fn(&VerifyOptions) -> Result<f64>,
}

const CHECKS: &[Check] = &[
    Check { name: "spectral.round-trip", bound: Bound::AtMost, tolerance: 1e-12, measure: round_trip },
    Check { name: "spectral.parseval", bound: Bound::AtMost, tolerance: 1e-12, measure: parseval },
    Check { name: "spectral.convolution-oracle", bound: Bound::AtMost, tolerance: 1e-12, measure: convolution_oracle },
    Check { name: "spectral.derivative-commutation", bound: Bound::AtMost, tolerance: 1e-14, measure: derivative_commutation },
    Check { name: "spectral.fractional-composition", bound: Bound::AtMost, tolerance: 1e-12, measure: fractional_composition },
    Check { name: "spectral.dealias-projection", bound: Bound::AtMost, tolerance: 0.0, measure: dealias_projection },
    Check { name: "dynamics.biot-savart-inversion", bound: Bound::AtMost, tolerance: 1e-12, measure: biot_savart },
    Check { name: "dynamics.rhs-energy-balance", bound: Bound::AtMost, tolerance: 1e-12, measure: rhs_energy_balance },
    Check { name: "dynamics.rhs-ideal-invariants", bound: Bound::AtMost, tolerance: 1e-12, measure: rhs_ideal_invariants },
    Check { name: "dynamics.integrator-order", bound: Bound::AtLeast, tolerance: 3.8, measure: integrator_order },
    Check { name: "dynamics.checkpoint-round-trip", bound: Bound::AtMost, tolerance: 0.0, measure: checkpoint_round_trip },
    Check { name: "diagnostics.positivity", bound: Bound::AtLeast, tolerance: -POSITIVITY_TOLERANCE, measure: positivity },
    Check { name: "diagnostics.gn-homogeneity", bound: Bound::AtMost, tolerance: 1e-10, measure: gn_homogeneity },
    Check { name: "diagnostics.region-examples", bound: Bound::AtMost, tolerance: 0.0, measure: region_examples },
];

/// Names of all properties, in report order.
pub fn property_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

/// Runs the selected properties. Errors inside a property are reported as
/// failures of that property.
pub fn verify(options: &VerifyOptions) -> VerifyReport {
    let properties = CHECKS
        .iter()
        .filter(|c| options.filter.as_deref().is_none_or(|f| c.name.contains(f)))
        .map(|c| match (c.measure)(options) {
            Ok(v) => PropertyResult::measured(c.name, v, c.bound, c.tolerance),
            Err(e) => PropertyResult::failed(c.name, c.bound, c.tolerance, e.to_string()),
        })
        .collect();
    VerifyReport { properties }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

/// Random Hermitian field on every mode `1 ≤ |k| ≤ radius`.
fn band_field(grid: GridSpec, rng: &mut ChaCha8Rng, radius: f64) -> Result<SpectralField> {
    random_band_field(grid, rng, radius)
}

fn max_relative(a: &SpectralField, b: &SpectralField) -> f64 {
    a.max_abs_diff(b) / b.max_abs().max(f64::MIN_POSITIVE)
}

fn round_trip(_: &VerifyOptions) -> Result<f64> {
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for n in [8, 16, 32, 64] {
        let grid = GridSpec::new(n)?;
        let samples = RealSamples::from_values(grid, (0..grid.len()).map(|_| r.random_range(-1.0..1.0)).collect())?;
        let back = inverse_transform(&forward_transform(&samples))?;
        worst = worst.max(back.max_abs_diff(&samples));
        let f = band_field(grid, &mut r, grid.dealias_kmax() as f64)?;
        let again = forward_transform(&inverse_transform(&f)?);
        worst = worst.max(again.max_abs_diff(&f));
    }
    Ok(worst)
}

fn parseval(_: &VerifyOptions) -> Result<f64> {
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    for n in [16, 32, 64] {
        let grid = GridSpec::new(n)?;
        let samples = RealSamples::from_values(grid, (0..grid.len()).map(|_| r.random_range(-1.0..1.0)).collect())?;
        let h = grid.spacing();
        let quadrature: f64 = samples.values().iter().map(|v| v * v).sum::<f64>() * h * h;
        let spectral = l2_norm(&forward_transform(&samples)).powi(2);
        worst = worst.max((spectral - quadrature).abs() / quadrature);
    }
    Ok(worst)
}

/// Truncated convolution `Σ_{p+q=k} f̂(p)ĝ(q)` over retained wavevectors,
/// evaluated directly.
pub fn brute_force_product(f: &SpectralField, g: &SpectralField) -> SpectralField {
    let grid = f.grid();
    let kmax = grid.dealias_kmax();
    let retained = |k1: i64, k2: i64| k1.abs() <= kmax && k2.abs() <= kmax;
    let mut out = SpectralField::zeros(grid);
    for p1 in -kmax..=kmax {
        for p2 in -kmax..=kmax {
            let fp = f.coeff(p1, p2);
            if fp == Complex64::new(0.0, 0.0) {
                continue;
            }
            for q1 in -kmax..=kmax {
                for q2 in -kmax..=kmax {
                    let (k1, k2) = (p1 + q1, p2 + q2);
                    if retained(k1, k2) {
                        let c = out.coeff(k1, k2) + fp * g.coeff(q1, q2);
                        out.set_coeff(k1, k2, c);
                    }
                }
            }
        }
    }
    out
}

fn convolution_oracle(options: &VerifyOptions) -> Result<f64> {
    let grid = GridSpec::new(16)?;
    let kmax = grid.dealias_kmax();
    let cutoff = options.dealias_cutoff_override.unwrap_or(kmax);
    let mut r = rng(3);
    let mut worst: f64 = 0.0;
    for _ in 0..4 {
        let f = square_field(grid, &mut r, kmax);
        let g = square_field(grid, &mut r, kmax);
        let fast = pointwise_product_with_cutoff(&f, &g, cutoff)?;
        worst = worst.max(fast.max_abs_diff(&brute_force_product(&f, &g)));
    }
    Ok(worst)
}

/// Random Hermitian field filling the whole retained square `|k_i| ≤ kmax`,
/// including the mean.
fn square_field(grid: GridSpec, r: &mut ChaCha8Rng, kmax: i64) -> SpectralField {
    let mut f = SpectralField::zeros(grid);
    for k1 in 0..=kmax {
        for k2 in -kmax..=kmax {
            if k1 == 0 && k2 < 0 {
                continue;
            }
            let c = if k1 == 0 && k2 == 0 {
                Complex64::new(r.random_range(-1.0..1.0), 0.0)
            } else {
                Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
            };
            f.set_coeff(k1, k2, c);
            f.set_coeff(-k1, -k2, c.conj());
        }
    }
    f
}

fn derivative_commutation(_: &VerifyOptions) -> Result<f64> {
    let grid = GridSpec::new(32)?;
    let f = band_field(grid, &mut rng(4), 10.0)?;
    let a = partial_derivative(&partial_derivative(&f, Axis::X1), Axis::X2);
    let b = partial_derivative(&partial_derivative(&f, Axis::X2), Axis::X1);
    Ok(max_relative(&a, &b))
}

fn fractional_composition(_: &VerifyOptions) -> Result<f64> {
    let grid = GridSpec::new(32)?;
    let f = band_field(grid, &mut rng(5), 10.0)?;
    let mut worst: f64 = 0.0;
    for (s, t) in [(0.3, 0.5), (-0.7, 1.2), (1.0, 1.0), (-1.0, 2.0)] {
        let composed = fractional_power(&fractional_power(&f, s)?, t)?;
        worst = worst.max(max_relative(&composed, &fractional_power(&f, s + t)?));
    }
    Ok(worst)
}

fn dealias_projection(_: &VerifyOptions) -> Result<f64> {
    let grid = GridSpec::new(24)?;
    let mut r = rng(6);
    let samples = RealSamples::from_values(grid, (0..grid.len()).map(|_| r.random_range(-1.0..1.0)).collect())?;
    let f = forward_transform(&samples);
    let once = dealias(&f);
    let mut worst = dealias(&once).max_abs_diff(&once);
    for idx in 0..grid.len() {
        let (k1, k2) = grid.wavevector(idx);
        let kept = 3 * k1.abs().max(k2.abs()) < grid.n() as i64;
        let expected = if kept { f.coeffs()[idx] } else { Complex64::new(0.0, 0.0) };
        worst = worst.max((once.coeffs()[idx] - expected).norm());
    }
    Ok(worst)
}

fn biot_savart(_: &VerifyOptions) -> Result<f64> {
    let grid = GridSpec::new(32)?;
    let omega = band_field(grid, &mut rng(7), 10.0)?;
    let u = velocity_from_vorticity(&omega)?;
    Ok(max_relative(&u.curl(), &omega).max(u.divergence().max_abs() / omega.max_abs()))
}

/// `4π² Σ Re(a conj b) |k|^power` over `k ≠ 0`, and the same sum of
/// magnitudes as its scale.
fn weighted(a: &SpectralField, b: &SpectralField, power: f64) -> (f64, f64) {
    let grid = a.grid();
    let (mut sum, mut scale) = (0.0, 0.0);
    for idx in 0..grid.len() {
        let (k1, k2) = grid.wavevector(idx);
        let k_sq = (k1 * k1 + k2 * k2) as f64;
        if k_sq == 0.0 {
            continue;
        }
        let w = k_sq.powf(0.5 * power);
        sum += (a.coeffs()[idx] * b.coeffs()[idx].conj()).re * w;
        scale += a.coeffs()[idx].norm() * b.coeffs()[idx].norm() * w;
    }
    (4.0 * PI * PI * sum, 4.0 * PI * PI * scale)
}

fn random_state(grid: GridSpec, stream: u64) -> Result<MhdState> {
    let mut r = rng(stream);
    let w = band_field(grid, &mut r, 10.0)?;
    let j = band_field(grid, &mut r, 10.0)?;
    MhdState::new(w, j, 0.0)
}

fn rhs_energy_balance(_: &VerifyOptions) -> Result<f64> {
    let grid = GridSpec::new(32)?;
    let state = random_state(grid, 8)?;
    let params = PhysParams::new(0.4, 1.2)?;
    let (dw, dj) = rhs(&state, &params)?;
    let (ew, sw) = weighted(&state.omega_hat, &dw, -2.0);
    let (ej, sj) = weighted(&state.j_hat, &dj, -2.0);
    let dissipation = crate::dynamics::dissipation_rate(&state, &params)?;
    Ok((ew + ej + dissipation).abs() / (sw + sj))
}

fn rhs_ideal_invariants(_: &VerifyOptions) -> Result<f64> {
    let grid = GridSpec::new(32)?;
    let state = random_state(grid, 9)?;
    let (dw, dj) = rhs(&state, &PhysParams::ideal(0.4, 1.2)?)?;
    let (w, j) = (&state.omega_hat, &state.j_hat);
    let energy = [weighted(w, &dw, -2.0), weighted(j, &dj, -2.0)];
    let helicity = [weighted(&dw, j, -2.0), weighted(w, &dj, -2.0)];
    let potential = [weighted(j, &dj, -4.0)];
    let rel = |terms: &[(f64, f64)]| {
        let sum: f64 = terms.iter().map(|t| t.0).sum();
        let scale: f64 = terms.iter().map(|t| t.1).sum();
        sum.abs() / scale
    };
    Ok(rel(&energy).max(rel(&helicity)).max(rel(&potential)))
}

/// Observed order of the time stepper from successive halvings against a
/// fine reference.
pub fn self_convergence_order(
    initial: &MhdState,
    params: PhysParams,
    t_end: f64,
    steps: &[f64],
    reference_dt: f64,
) -> Result<Vec<f64>> {
    let advance = |dt: f64| -> Result<MhdState> {
        let count = (t_end / dt).round() as usize;
        let mut integrator = Integrator::new(initial.grid(), params);
        let mut s = initial.clone();
        for _ in 0..count {
            s = integrator.step(&s, dt)?;
        }
        Ok(s)
    };
    let reference = advance(reference_dt)?;
    let errors = steps
        .iter()
        .map(|&dt| Ok(advance(dt)?.max_abs_diff(&reference)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(errors
        .windows(2)
        .zip(steps.windows(2))
        .map(|(e, h)| (e[0] / e[1]).ln() / (h[0] / h[1]).ln())
        .collect())
}

fn integrator_order(_: &VerifyOptions) -> Result<f64> {
    let grid = GridSpec::new(32)?;
    let initial = init_condition(InitialCondition::OrszagTangLike, grid, 0, 1.0)?;
    let orders = self_convergence_order(&initial, PhysParams::new(0.5, 1.0)?, 0.4, &[0.04, 0.02, 0.01], 0.0025)?;
    Ok(orders.into_iter().fold(f64::INFINITY, f64::min))
}

fn checkpoint_round_trip(_: &VerifyOptions) -> Result<f64> {
    let grid = GridSpec::new(32)?;
    let mut state = random_state(grid, 10)?;
    state.time = 0.125;
    let params = PhysParams::new(0.25, 1.25)?;
    let dir = std::env::temp_dir().join(format!("fracmhd-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let outcome = (|| {
        let path = write_checkpoint(&dir.join("state"), &state, &params)?;
        let (back, back_params) = read_checkpoint(&path)?;
        let mismatch = back_params != params || back.time != state.time;
        Ok(if mismatch { f64::INFINITY } else { back.max_abs_diff(&state) })
    })();
    let _ = std::fs::remove_dir_all(&dir);
    outcome
}

fn positivity(_: &VerifyOptions) -> Result<f64> {
    let grid = GridSpec::new(32)?;
    let mut r = rng(11);
    let mut worst = f64::INFINITY;
    for _ in 0..100 {
        let omega = band_field(grid, &mut r, 4.0)?;
        for s in [0.2, 0.6, 0.98] {
            for p in [4, 6] {
                worst = worst.min(positivity_integral(&omega, s, p)?.normalized());
            }
        }
    }
    Ok(worst)
}

fn gn_homogeneity(_: &VerifyOptions) -> Result<f64> {
    let grid = GridSpec::new(32)?;
    let f = band_field(grid, &mut rng(12), 6.0)?;
    let mut worst: f64 = 0.0;
    let mut family = GnInequality::family(0.25, 1.25, 4.0);
    family.extend(GnInequality::family(0.45, 1.0, 3.0));
    for ineq in family {
        let base = gn_ratio(&f, ineq)?;
        for lambda in [1e-3, 7.5, 1e3] {
            let scaled = gn_ratio(&f.scale(lambda), ineq)?;
            worst = worst.max((scaled - base).abs() / base);
        }
    }
    Ok(worst)
}

fn region_examples(_: &VerifyOptions) -> Result<f64> {
    let cases = [
        ((0.0, 1.6), Region::Theorem1New),
        ((0.25, 1.25), Region::Theorem1New),
        ((2.0, 0.0), Region::PriorTyz),
        ((1.0, 1.0), Region::PriorTyz),
        ((0.0, 1.0), Region::Open),
        ((1.0, 0.0), Region::Open),
        ((0.0, 0.0), Region::OutsideAll),
    ];
    Ok(cases
        .iter()
        .filter(|((a, b), expected)| classify_region(*a, *b).region != *expected)
        .count() as f64)
}
