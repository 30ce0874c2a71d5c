use quantum_sim::rng::seeded_rng;
use quantum_sim::{run_circuit, sample_bitstrings, sample_expectations, AnnealSchedule, SampleSet};
use qubo_core::IsingModel;

use crate::{Result, SchedError};

/// What to measure after the circuit runs.
#[derive(Debug, Clone, PartialEq)]
pub enum ShotSpec {
    /// Per-qubit bit-1 frequencies from `shots` full-register draws.
    Expectations { shots: usize },
    /// Exact statevector expectations, for deterministic runs.
    ExactExpectations,
    /// Ordered basis-state draws with optional readout bit-flip noise.
    Bitstrings { shots: usize, readout_flip: f64 },
}

/// One independent circuit execution: a sub-Hamiltonian, how deep to run the
/// schedule, what to measure, and the job's own derived RNG seed.
#[derive(Debug, Clone)]
pub struct CircuitJob {
    pub id: u64,
    pub model: IsingModel,
    pub schedule: AnnealSchedule,
    pub depth: usize,
    pub shots: ShotSpec,
    pub seed: u64,
    pub subset_index: usize,
    pub iteration: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum JobOutput {
    Expectations(Vec<f64>),
    Samples(SampleSet),
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobResult {
    pub job_id: u64,
    pub subset_index: usize,
    pub output: JobOutput,
}

/// Simulate one job. Pure given the job payload: the generator is seeded from
/// the job's own seed, so results do not depend on scheduling order.
pub fn run_job(job: &CircuitJob) -> Result<JobResult> {
    let wrap = |source| SchedError::JobFailed {
        job_id: job.id,
        source,
    };
    let state = run_circuit(&job.model, &job.schedule, job.depth).map_err(wrap)?;
    let mut rng = seeded_rng(job.seed);
    let output = match job.shots {
        ShotSpec::Expectations { shots } => {
            JobOutput::Expectations(sample_expectations(&state, shots, &mut rng).map_err(wrap)?)
        }
        ShotSpec::ExactExpectations => JobOutput::Expectations(state.qubit_expectations()),
        ShotSpec::Bitstrings {
            shots,
            readout_flip,
        } => JobOutput::Samples(
            sample_bitstrings(&state, shots, &mut rng, readout_flip).map_err(wrap)?,
        ),
    };
    Ok(JobResult {
        job_id: job.id,
        subset_index: job.subset_index,
        output,
    })
}
