//! Configuration, run orchestration, parameter sweeps and the self-check
//! suite behind the command-line interface.

mod config;
mod run;
mod sweep;
mod verify;

pub use config::{IcSpec, RunConfig, StepSize, MIN_RUN_GRID};
pub use run::{
    run, NormMaxima, RunStatus, RunSummary, CSV_FILE, FINAL_CHECKPOINT, SUMMARY_FILE, TAIL_THRESHOLD,
    TIMING_FILE,
};
pub use sweep::{sweep, SweepEntry, SweepReport, SweepSpec, REPORT_CSV, REPORT_JSON, THREADS_ENV};
pub use verify::{
    brute_force_product, property_names, self_convergence_order, verify, Bound, PropertyResult,
    VerifyOptions, VerifyReport,
};
