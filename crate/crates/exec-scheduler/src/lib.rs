//! Execution backends and timing for circuit jobs.
//!
//! Jobs in a batch are independent and may run on any local worker; the
//! scheduler additionally fills a modelled [`TimingLedger`] from a
//! discrete-event clock, reproducing sequential / single-QPU-parallel /
//! multi-QPU makespan comparisons without ever sleeping. Modelled QPU seconds
//! depend only on the job set, never on the policy; host worker-pool width is
//! configured independently of the modelled backend slots so timing modelling
//! and host parallelism do not interfere.

mod backend;
mod exec;
mod job;
mod ledger;
mod usage;

pub use backend::{BackendKind, BackendSpec};
pub use exec::{execute_batch, ExecutionPolicy, Executor};
pub use job::{run_job, CircuitJob, JobOutput, JobResult, ShotSpec};
pub use ledger::{JobTiming, LedgerTotals, TimingLedger};
pub use usage::{qpu_usage_model, QpuAccounting};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchedError {
    #[error("at least one backend is required")]
    NoBackends,

    #[error("job {job_id} failed: {source}")]
    JobFailed {
        job_id: u64,
        #[source]
        source: quantum_sim::SimError,
    },

    #[error("usage model inputs must be positive (service time may be zero)")]
    InvalidUsageInputs,

    #[error("backend '{0}' must have at least one worker slot")]
    NoSlots(String),
}

pub type Result<T> = std::result::Result<T, SchedError>;
