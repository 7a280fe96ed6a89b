//! Monitors for the quantities tracked by the regularity argument: the
//! `L²` energy/enstrophy functional, the `Λ^r j` functional with
//! `r = α + β − 1`, the BKM integral `∫(‖ω‖_∞ + ‖j‖_∞)`, the `L^p` norm of
//! vorticity, and the energy balance. Also hosts the positivity and
//! Gagliardo–Nirenberg checks and the regularity-region classifier.

mod gn;
mod positivity;
mod record;
mod region;

pub use gn::{gn_ratio, GnInequality};
pub use positivity::{positivity_check, positivity_integral, PositivitySample, POSITIVITY_TOLERANCE};
pub use record::{sample, Accumulators, DiagnosticsCsv, DiagnosticsRecord, CSV_COLUMNS};
pub use region::{classify_region, in_prior_tyz, in_prior_wu, in_theorem1, Region, RegionVerdict};
