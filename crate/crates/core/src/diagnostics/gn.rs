use num_complex::Complex64;

use crate::spectral::transform::{inverse_pair_into, Fft2};
use crate::spectral::{
    fractional_power, inverse_transform, lp_norm, partial_derivative, sobolev_seminorm, Axis,
    SpectralField,
};
use crate::{Error, Result};

/// The Gagliardo–Nirenberg bounds used in the regularity argument, applied
/// to a scalar field `f`. Each has the form `LHS ≤ C Π ‖·‖^{θ}` with the
/// exponents summing to one, so the ratio is amplitude invariant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GnInequality {
    /// `‖Λ^α f‖_{L⁴} ≤ C ‖f‖^{1/2−α} ‖∇f‖^{1/2+α}`
    FractionalL4 { alpha: f64 },
    /// `‖f‖_{L⁴} ≤ C ‖f‖^{1/2} ‖∇f‖^{1/2}`
    Ladyzhenskaya,
    /// `‖f‖_{L⁴} ≤ C ‖f‖^{1−1/(2β)} ‖Λ^β f‖^{1/(2β)}`
    DissipativeL4 { beta: f64 },
    /// `‖Λ^α f‖_{L⁴} ≤ C ‖f‖^{(2β−2α−1)/(2β)} ‖Λ^β f‖^{(1+2α)/(2β)}`
    DissipativeFractionalL4 { alpha: f64, beta: f64 },
    /// `‖Λ^α f‖_{L^∞} ≤ C ‖f‖^{(β−α)/(1+β)} ‖Λ^{β+1} f‖^{(1+α)/(1+β)}`
    FractionalLinf { alpha: f64, beta: f64 },
    /// `‖f‖_{L^∞} ≤ C ‖f‖^{r/(1+r)} ‖Λ^{1+r} f‖^{1/(1+r)}`
    Linf { r: f64 },
    /// `‖∇f‖_{L^∞} ≤ C ‖∇f‖^{(β+r−1)/(β+r)} ‖Λ^{β+r+1} f‖^{1/(β+r)}`
    GradientLinf { beta: f64, r: f64 },
    /// `‖Λ^{2r} f‖ ≤ C ‖f‖^{(β−r)/(β+r)} ‖Λ^{β+r} f‖^{2r/(β+r)}`
    Interpolation { beta: f64, r: f64 },
    /// `‖∇f‖_{L^q} ≤ C ‖∇f‖^{1−1/(pα)} ‖Λ^α ∇f‖^{1/(pα)}` with
    /// `1/α < p < ∞`, `1/p + 2/q = 1`.
    GradientLq { alpha: f64, p: f64 },
}

/// Unlabelled norms are `L²`.
enum Lhs {
    /// `‖Λ^s f‖_{L^p}`
    Scalar { s: f64, p: f64 },
    /// `‖ |∇f| ‖_{L^p}`
    Gradient { p: f64 },
}

impl GnInequality {
    pub fn id(&self) -> &'static str {
        match self {
            Self::FractionalL4 { .. } => "fractional-l4",
            Self::Ladyzhenskaya => "ladyzhenskaya",
            Self::DissipativeL4 { .. } => "dissipative-l4",
            Self::DissipativeFractionalL4 { .. } => "dissipative-fractional-l4",
            Self::FractionalLinf { .. } => "fractional-linf",
            Self::Linf { .. } => "linf",
            Self::GradientLinf { .. } => "gradient-linf",
            Self::Interpolation { .. } => "interpolation",
            Self::GradientLq { .. } => "gradient-lq",
        }
    }

    /// Every inequality instantiated at `(α, β)` with `r = α + β − 1`, and
    /// `p` for the `L^q` gradient bound. Members whose side conditions fail
    /// at these parameters are omitted.
    pub fn family(alpha: f64, beta: f64, p: f64) -> Vec<Self> {
        let r = alpha + beta - 1.0;
        [
            Self::FractionalL4 { alpha },
            Self::Ladyzhenskaya,
            Self::DissipativeL4 { beta },
            Self::DissipativeFractionalL4 { alpha, beta },
            Self::FractionalLinf { alpha, beta },
            Self::Linf { r },
            Self::GradientLinf { beta, r },
            Self::Interpolation { beta, r },
            Self::GradientLq { alpha, p },
        ]
        .into_iter()
        .filter(|g| g.validate().is_ok())
        .collect()
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Self::FractionalL4 { alpha } => (0.0..=0.5).contains(&alpha),
            Self::Ladyzhenskaya => true,
            Self::DissipativeL4 { beta } => beta >= 0.5,
            Self::DissipativeFractionalL4 { alpha, beta } => {
                alpha >= 0.0 && beta > 0.0 && 2.0 * beta - 2.0 * alpha - 1.0 >= 0.0
            }
            Self::FractionalLinf { alpha, beta } => alpha >= 0.0 && beta >= alpha,
            Self::Linf { r } => r > 0.0,
            Self::GradientLinf { beta, r } => r > 0.0 && beta + r >= 1.0,
            Self::Interpolation { beta, r } => r > 0.0 && beta >= r,
            Self::GradientLq { alpha, p } => alpha > 0.0 && alpha < 1.0 && p > 1.0 / alpha && p.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "side conditions of {} fail for {self:?}",
                self.id()
            )))
        }
    }

    /// Left-hand side and right-hand `(order, exponent)` pairs; a right-hand
    /// factor is `‖Λ^order f‖_{L²}`.
    fn terms(&self) -> (Lhs, Vec<(f64, f64)>) {
        use Lhs::*;
        match *self {
            Self::FractionalL4 { alpha } => (
                Scalar { s: alpha, p: 4.0 },
                vec![(0.0, 0.5 - alpha), (1.0, 0.5 + alpha)],
            ),
            Self::Ladyzhenskaya => (Scalar { s: 0.0, p: 4.0 }, vec![(0.0, 0.5), (1.0, 0.5)]),
            Self::DissipativeL4 { beta } => (
                Scalar { s: 0.0, p: 4.0 },
                vec![(0.0, 1.0 - 0.5 / beta), (beta, 0.5 / beta)],
            ),
            Self::DissipativeFractionalL4 { alpha, beta } => (
                Scalar { s: alpha, p: 4.0 },
                vec![
                    (0.0, (2.0 * beta - 2.0 * alpha - 1.0) / (2.0 * beta)),
                    (beta, (1.0 + 2.0 * alpha) / (2.0 * beta)),
                ],
            ),
            Self::FractionalLinf { alpha, beta } => (
                Scalar { s: alpha, p: f64::INFINITY },
                vec![
                    (0.0, (beta - alpha) / (1.0 + beta)),
                    (beta + 1.0, (1.0 + alpha) / (1.0 + beta)),
                ],
            ),
            Self::Linf { r } => (
                Scalar { s: 0.0, p: f64::INFINITY },
                vec![(0.0, r / (1.0 + r)), (1.0 + r, 1.0 / (1.0 + r))],
            ),
            Self::GradientLinf { beta, r } => (
                Gradient { p: f64::INFINITY },
                vec![
                    (1.0, (beta + r - 1.0) / (beta + r)),
                    (beta + r + 1.0, 1.0 / (beta + r)),
                ],
            ),
            Self::Interpolation { beta, r } => (
                Scalar { s: 2.0 * r, p: 2.0 },
                vec![
                    (0.0, (beta - r) / (beta + r)),
                    (beta + r, 2.0 * r / (beta + r)),
                ],
            ),
            Self::GradientLq { alpha, p } => {
                let q = 2.0 * p / (p - 1.0);
                let theta = 1.0 / (p * alpha);
                (Gradient { p: q }, vec![(1.0, 1.0 - theta), (1.0 + alpha, theta)])
            }
        }
    }
}

/// `LHS / (Π factor^exponent)` for the given inequality, all norms computed
/// spectrally on `f` itself.
pub fn gn_ratio(f: &SpectralField, inequality: GnInequality) -> Result<f64> {
    inequality.validate()?;
    let (lhs, rhs) = inequality.terms();
    let mut denom = 1.0;
    for (order, exponent) in rhs {
        let factor = sobolev_seminorm(f, order)?;
        if factor == 0.0 {
            return Err(Error::DegenerateInput(format!(
                "{}: right-hand factor ‖Λ^{order} f‖ vanishes",
                inequality.id()
            )));
        }
        denom *= factor.powf(exponent);
    }
    let numer = match lhs {
        Lhs::Scalar { s, p } => {
            let g = if s == 0.0 { f.clone() } else { fractional_power(f, s)? };
            if p == 2.0 {
                sobolev_seminorm(&g, 0.0)?
            } else {
                lp_norm(&inverse_transform(&g)?, p)?
            }
        }
        Lhs::Gradient { p } => {
            let grid = f.grid();
            let d1 = partial_derivative(f, Axis::X1);
            let d2 = partial_derivative(f, Axis::X2);
            let mut fft = Fft2::new(grid);
            let mut buf = vec![Complex64::new(0.0, 0.0); grid.len()];
            let (mut g1, mut g2) = (vec![0.0; grid.len()], vec![0.0; grid.len()]);
            inverse_pair_into(&mut fft, d1.coeffs(), d2.coeffs(), &mut buf, &mut g1, &mut g2);
            let magnitude: Vec<f64> = g1.iter().zip(&g2).map(|(a, b)| a.hypot(*b)).collect();
            lp_norm(&crate::spectral::RealSamples::from_values(grid, magnitude)?, p)?
        }
    };
    Ok(numer / denom)
}
