use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fracmhd::spectral::{
    dealias, forward_transform, fractional_power, inverse_transform, l2_norm, lp_norm, partial_derivative,
    pointwise_product, sobolev_seminorm_sq, Axis, GridSpec, RealSamples, SpectralField,
};

fn random_samples(grid: GridSpec, seed: u64) -> RealSamples {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    RealSamples::from_values(grid, (0..grid.len()).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
}

/// Hermitian field filling `|k_i| ≤ kmax` with uniform random coefficients.
fn random_square(grid: GridSpec, kmax: i64, seed: u64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = SpectralField::zeros(grid);
    for k1 in -kmax..=kmax {
        for k2 in -kmax..=kmax {
            if (k1, k2) < (0, 0) || (k1 == 0 && k2 < 0) {
                continue;
            }
            let im = if (k1, k2) == (0, 0) { 0.0 } else { rng.random_range(-1.0..1.0) };
            let c = Complex64::new(rng.random_range(-1.0..1.0), im);
            f.set_coeff(k1, k2, c);
            f.set_coeff(-k1, -k2, c.conj());
        }
    }
    f
}

/// Direct evaluation of `f(x) = Σ_k f̂(k) e^{ik·x}` at one point.
fn synthesize(f: &SpectralField, x1: f64, x2: f64) -> f64 {
    let grid = f.grid();
    (0..grid.len())
        .map(|idx| {
            let (k1, k2) = grid.wavevector(idx);
            let phase = k1 as f64 * x1 + k2 as f64 * x2;
            (f.coeffs()[idx] * Complex64::from_polar(1.0, phase)).re
        })
        .sum()
}

/// `Σ_{p+q=k} f̂(p)ĝ(q)` for `|k_i| ≤ kmax`, by enumerating all pairs.
fn truncated_convolution(f: &SpectralField, g: &SpectralField, kmax: i64) -> SpectralField {
    let grid = f.grid();
    let n = grid.n() as i64;
    let mut out = SpectralField::zeros(grid);
    let half = n / 2;
    for p1 in -half + 1..=half {
        for p2 in -half + 1..=half {
            for q1 in -half + 1..=half {
                for q2 in -half + 1..=half {
                    let (k1, k2) = (p1 + q1, p2 + q2);
                    if k1.abs() > kmax || k2.abs() > kmax {
                        continue;
                    }
                    let term = f.coeff(p1, p2) * g.coeff(q1, q2);
                    if term != Complex64::new(0.0, 0.0) {
                        let c = out.coeff(k1, k2) + term;
                        out.set_coeff(k1, k2, c);
                    }
                }
            }
        }
    }
    out
}

fn even_grid() -> impl Strategy<Value = GridSpec> {
    (4usize..=32).prop_map(|h| GridSpec::new(2 * h).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn round_trip_recovers_samples(grid in even_grid(), seed in any::<u64>()) {
        let f = random_samples(grid, seed);
        let back = inverse_transform(&forward_transform(&f)).unwrap();
        prop_assert!(back.max_abs_diff(&f) <= 1e-12);
    }

    #[test]
    fn parseval_matches_quadrature(grid in even_grid(), seed in any::<u64>()) {
        let f = random_samples(grid, seed);
        let h = grid.spacing();
        let quadrature: f64 = f.values().iter().map(|v| v * v).sum::<f64>() * h * h;
        let spectral = l2_norm(&forward_transform(&f)).powi(2);
        prop_assert!((spectral - quadrature).abs() <= 1e-12 * quadrature);
        prop_assert!((lp_norm(&f, 2.0).unwrap().powi(2) - quadrature).abs() <= 1e-12 * quadrature);
    }

    #[test]
    fn forward_transform_matches_direct_synthesis(seed in any::<u64>()) {
        let grid = GridSpec::new(12).unwrap();
        let f = random_square(grid, 4, seed);
        let x = inverse_transform(&f).unwrap();
        for (i1, i2) in [(0, 0), (3, 7), (11, 5)] {
            let (x1, x2) = grid.node(i1, i2);
            prop_assert!((x.get(i1, i2) - synthesize(&f, x1, x2)).abs() < 1e-13);
        }
    }

    #[test]
    fn product_equals_truncated_convolution(seed in any::<u64>()) {
        let grid = GridSpec::new(16).unwrap();
        let kmax = grid.dealias_kmax();
        let f = random_square(grid, kmax, seed);
        let g = random_square(grid, kmax, seed.wrapping_add(1));
        let fast = pointwise_product(&f, &g).unwrap();
        let exact = truncated_convolution(&f, &g, kmax);
        prop_assert!(fast.max_abs_diff(&exact) <= 1e-12);
    }

    #[test]
    fn mixed_derivatives_commute(seed in any::<u64>()) {
        let grid = GridSpec::new(32).unwrap();
        let f = forward_transform(&random_samples(grid, seed));
        let a = partial_derivative(&partial_derivative(&f, Axis::X1), Axis::X2);
        let b = partial_derivative(&partial_derivative(&f, Axis::X2), Axis::X1);
        prop_assert!(a.max_abs_diff(&b) <= 1e-12 * a.max_abs().max(1.0));
    }

    #[test]
    fn fractional_powers_compose(seed in any::<u64>(), s in -1.0f64..2.0, t in 0.0f64..2.0) {
        let grid = GridSpec::new(32).unwrap();
        let mut f = random_square(grid, 10, seed);
        f.clear_mean();
        let composed = fractional_power(&fractional_power(&f, s).unwrap(), t).unwrap();
        let direct = fractional_power(&f, s + t).unwrap();
        prop_assert!(composed.max_abs_diff(&direct) <= 1e-12 * direct.max_abs());
    }

    #[test]
    fn dealias_is_a_projection(grid in even_grid(), seed in any::<u64>()) {
        let f = forward_transform(&random_samples(grid, seed));
        let once = dealias(&f);
        prop_assert_eq!(dealias(&once), once.clone());
        let n = grid.n() as i64;
        for idx in 0..grid.len() {
            let (k1, k2) = grid.wavevector(idx);
            let kept = 3 * k1.abs().max(k2.abs()) < n;
            let expected = if kept { f.coeffs()[idx] } else { Complex64::new(0.0, 0.0) };
            prop_assert_eq!(once.coeffs()[idx], expected);
        }
    }

    #[test]
    fn seminorm_zero_is_l2_for_mean_zero(seed in any::<u64>()) {
        let grid = GridSpec::new(16).unwrap();
        let mut f = random_square(grid, 5, seed);
        f.clear_mean();
        let a = sobolev_seminorm_sq(&f, 0.0).unwrap();
        prop_assert!((a - l2_norm(&f).powi(2)).abs() <= 1e-13 * a);
    }
}

#[test]
fn derivative_of_sine_is_cosine() {
    let grid = GridSpec::new(32).unwrap();
    let f = forward_transform(&RealSamples::from_fn(grid, |x1, x2| (3.0 * x1 - 2.0 * x2).sin()));
    let d1 = inverse_transform(&partial_derivative(&f, Axis::X1)).unwrap();
    let d2 = inverse_transform(&partial_derivative(&f, Axis::X2)).unwrap();
    let e1 = RealSamples::from_fn(grid, |x1, x2| 3.0 * (3.0 * x1 - 2.0 * x2).cos());
    let e2 = RealSamples::from_fn(grid, |x1, x2| -2.0 * (3.0 * x1 - 2.0 * x2).cos());
    assert!(d1.max_abs_diff(&e1) < 1e-13);
    assert!(d2.max_abs_diff(&e2) < 1e-13);
}

#[test]
fn single_mode_norms_have_closed_forms() {
    // ‖cos(k·x)‖² = 2π², ‖Λ^s cos(k·x)‖² = 2π²|k|^{2s}
    let grid = GridSpec::new(32).unwrap();
    let f = SpectralField::cosine(grid, 3, 4, 1.0);
    assert!((l2_norm(&f).powi(2) - 2.0 * PI * PI).abs() < 1e-12);
    let s = sobolev_seminorm_sq(&f, 0.7).unwrap();
    assert!((s - 2.0 * PI * PI * 5f64.powf(1.4)).abs() < 1e-11 * s);
    let x = inverse_transform(&f).unwrap();
    assert!((lp_norm(&x, f64::INFINITY).unwrap() - 1.0).abs() < 1e-14);
    // ∫cos⁴ = (3/8)(2π)²
    let l4 = lp_norm(&x, 4.0).unwrap().powi(4);
    assert!((l4 - 1.5 * PI * PI).abs() < 1e-12);
}

#[test]
fn aliasing_appears_without_dealiasing() {
    // Sanity check of the oracle: the undealiased product of two modes at
    // the retained edge wraps around, and the dealiased product removes it.
    let grid = GridSpec::new(16).unwrap();
    let f = SpectralField::cosine(grid, 5, 0, 1.0);
    let prod = pointwise_product(&f, &f).unwrap();
    assert!(prod.coeff(10, 0).norm() == 0.0);
    assert!(prod.coeff(-6, 0).norm() < 1e-15);
    assert!((prod.mean().re - 0.5).abs() < 1e-15);
}
