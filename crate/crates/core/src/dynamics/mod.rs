//! The evolved system: vorticity `ω = ∇⊥·u` and current `j = ∇⊥·b` under
//!
//! ```text
//! ω_t + u·∇ω = b·∇j − ν Λ^{2α} ω
//! j_t + u·∇j = b·∇ω + T(∇u, ∇b) − κ Λ^{2β} j
//! ```
//!
//! with `u`, `b` recovered from `ω`, `j` by Biot–Savart inversion.

mod checkpoint;
mod initial;
mod integrator;
mod invariants;
mod operators;
mod params;
mod state;

pub use checkpoint::{read_checkpoint, write_checkpoint, CheckpointMeta};
pub use initial::{init_condition, normalize_energy, random_band_field, InitialCondition};
pub use integrator::{cfl_dt, step, Integrator, CFL_SPEED_FLOOR};
pub use invariants::{
    cross_helicity, dissipation_rate, kinetic_energy, magnetic_energy, mean_square_potential,
    total_energy,
};
pub use operators::{advect, rhs, stretching_term, velocity_from_vorticity, NonlinearOperator};
pub use params::PhysParams;
pub use state::{MhdState, VectorField};
