use std::fmt;

use serde::{Deserialize, Serialize};

/// Slack applied to every comparison so that decimal inputs lying exactly
/// on a boundary (e.g. `3·0.2 + 2·1.2 = 3`) classify as the boundary they
/// denote rather than by rounding noise.
const SLACK: f64 = 1e-12;

fn gt(a: f64, b: f64) -> bool {
    a > b + SLACK
}

fn ge(a: f64, b: f64) -> bool {
    a >= b - SLACK
}

fn lt(a: f64, b: f64) -> bool {
    a < b - SLACK
}

fn eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= SLACK
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    /// `0 ≤ α < 1/2, β ≥ 1, 3α + 2β > 3`, not covered by earlier results.
    Theorem1New,
    /// `α ≥ 1, β > 0, α + β ≥ 2`.
    PriorWu,
    /// `α ≥ 1/2, β ≥ 1`, or `0 ≤ α < 1/2, 2α + β > 2`, or `α ≥ 2, β = 0`.
    PriorTyz,
    /// `(α, β) = (0, 1)` or `(1, 0)`.
    Open,
    OutsideAll,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Theorem1New => "theorem1-new",
            Self::PriorWu => "prior-wu",
            Self::PriorTyz => "prior-tyz",
            Self::Open => "open",
            Self::OutsideAll => "outside-all",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub region: Region,
    pub detail: String,
}

pub fn in_prior_wu(alpha: f64, beta: f64) -> bool {
    ge(alpha, 1.0) && gt(beta, 0.0) && ge(alpha + beta, 2.0)
}

pub fn in_prior_tyz(alpha: f64, beta: f64) -> bool {
    (ge(alpha, 0.5) && ge(beta, 1.0))
        || (ge(alpha, 0.0) && lt(alpha, 0.5) && gt(2.0 * alpha + beta, 2.0))
        || (ge(alpha, 2.0) && eq(beta, 0.0))
}

pub fn in_theorem1(alpha: f64, beta: f64) -> bool {
    ge(alpha, 0.0) && lt(alpha, 0.5) && ge(beta, 1.0) && gt(3.0 * alpha + 2.0 * beta, 3.0)
}

/// Places `(α, β)` on the regularity map. The earlier results are matched
/// first (TYZ, then Wu), so `theorem1-new` reports only points the new
/// condition adds; the two named open cases come next.
pub fn classify_region(alpha: f64, beta: f64) -> RegionVerdict {
    let (region, detail) = if alpha.is_nan() || beta.is_nan() || alpha < 0.0 || beta < 0.0 {
        (Region::OutsideAll, "parameters must be non-negative".to_owned())
    } else if in_prior_tyz(alpha, beta) {
        let which = if ge(alpha, 0.5) && ge(beta, 1.0) {
            "α ≥ 1/2, β ≥ 1"
        } else if lt(alpha, 0.5) {
            "0 ≤ α < 1/2, 2α + β > 2"
        } else {
            "α ≥ 2, β = 0"
        };
        (Region::PriorTyz, which.to_owned())
    } else if in_prior_wu(alpha, beta) {
        (Region::PriorWu, "α ≥ 1, β > 0, α + β ≥ 2".to_owned())
    } else if in_theorem1(alpha, beta) {
        (
            Region::Theorem1New,
            format!(
                "0 ≤ α < 1/2, β ≥ 1, 3α + 2β = {} > 3",
                3.0 * alpha + 2.0 * beta
            ),
        )
    } else if (eq(alpha, 0.0) && eq(beta, 1.0)) || (eq(alpha, 1.0) && eq(beta, 0.0)) {
        (Region::Open, "named open case".to_owned())
    } else {
        (Region::OutsideAll, "no known regularity condition holds".to_owned())
    };
    RegionVerdict { region, detail }
}
