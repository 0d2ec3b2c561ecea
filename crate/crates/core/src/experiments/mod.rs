//! Named, reproducible scenarios combining dynamics, diagnostics and bound
//! states, plus viscosity sweeps and refinement studies.

mod config;
pub mod convergence;
mod initial;
mod report;
mod runner;
pub mod sweep;

pub use config::{
    ConvergenceConfig, CriterionSign, GridConfig, InitialData, NumericsConfig, OutputConfig, Reference, ScenarioConfig,
    ScenarioKind, SweepConfig, TimeConfig, UGenerator, VGenerator,
};
pub use convergence::run_convergence;
pub use initial::{generate_initial_data, InitialState};
pub use report::{
    drift_summary, virial_samples, virial_summary, ConvergenceLevel, ConvergenceTable, DriftSummary, RunReport,
    RunStatus, SweepMember, SweepSummary, TrackingSummary, VirialSummary,
};
pub use runner::{
    persist, prepare, report_for, run_scenario, run_single, simulate, tracking_error, RunSetup, ScenarioOutcome,
    Trajectory,
};
pub use sweep::run_sweep;
