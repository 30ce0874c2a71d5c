//! The iterative decomposition loop.
//!
//! A global QUBO is split into fixed-size variable subsets; each subset
//! becomes a small sub-QUBO whose external variables are clamped to their
//! running expected values. Every sweep runs each sub-circuit one layer
//! deeper along the annealing schedule and refreshes the expectations from
//! per-qubit measurement frequencies. Sequential mode feeds each update into
//! the next sub-problem of the same sweep; parallel mode builds the whole
//! sweep from the previous iteration's snapshot so sub-circuits can run
//! concurrently, committing updates at an iteration barrier. A final
//! full-depth sampling pass draws ordered bitstrings from every sub-circuit
//! and concatenates the s-th draws into global candidate solutions.

mod config;
mod expectation;
mod partition;
mod report;
mod solve;
mod subproblem;

pub use config::{HadofConfig, HadofMode};
pub use expectation::ExpectationVector;
pub use partition::{make_partition, Partition};
pub use report::{accuracy, Accuracy, SolveReport};
pub use solve::{full_qaoa_solve, hadof_solve, FULL_QAOA_MAX_VARS};
pub use subproblem::{build_subproblem, SubProblem};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("subset index {index} out of range for n = {n}")]
    SubsetIndex { index: usize, n: usize },

    #[error("subset contains index {0} twice")]
    DuplicateIndex(usize),

    #[error("problem has {n} variables, below the subset size k = {k}")]
    ProblemTooSmall { n: usize, k: usize },

    #[error("{n} variables exceed the full-circuit cap of {max}")]
    FullCircuitTooLarge { n: usize, max: usize },

    #[error("accuracy reference must be nonzero")]
    ZeroReference,

    #[error(transparent)]
    Sim(#[from] quantum_sim::SimError),

    #[error(transparent)]
    Sched(#[from] exec_scheduler::SchedError),

    #[error(transparent)]
    Qubo(#[from] qubo_core::QuboError),
}

pub type Result<T> = std::result::Result<T, EngineError>;
