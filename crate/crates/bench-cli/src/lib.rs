//! Experiment driver behind the `bench-cli` binary.
//!
//! An [`ExperimentSpec`] names a problem source, a solver list and run
//! parameters; [`run_experiment`] executes every (size, repetition, solver)
//! cell, normalises objectives against a cached simulated-annealing
//! reference and writes per-run JSON, an aggregate CSV and plot-ready series
//! files. [`report_summary`] folds a results CSV into per-solver statistics.

mod runner;
mod spec;
mod summary;

pub use runner::{run_experiment, RunArtifacts};
pub use spec::{ExperimentSpec, ProblemSource, SolverKind};
pub use summary::{report_summary, SolverSummary};

/// Columns of the aggregate results CSV, in order.
pub const RESULT_COLUMNS: &str = "solver,n,rep,best_acc,avg_acc,wall_s,modelled_qpu_s,makespan_s";
