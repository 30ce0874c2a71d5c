use std::time::Instant;

use rayon::prelude::*;

use crate::job::{run_job, CircuitJob, JobResult};
use crate::ledger::{JobTiming, TimingLedger};
use crate::{BackendSpec, Result, SchedError};

/// How a batch is laid out on the modelled backends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecutionPolicy {
    /// Jobs one-after-another on backend 0; no host concurrency either.
    Sequential,
    /// Backend 0's worker slots filled greedily.
    ParallelOneBackend,
    /// Round-robin across all backends, each with its own slots and delay.
    ParallelMultiBackend,
}

/// Executes circuit-job batches on a local worker pool while filling the
/// modelled ledger. Host pool width (`workers`) is independent of the modelled
/// backend slots.
pub struct Executor {
    backends: Vec<BackendSpec>,
    policy: ExecutionPolicy,
    pool: Option<rayon::ThreadPool>,
}

impl Executor {
    pub fn new(
        backends: Vec<BackendSpec>,
        policy: ExecutionPolicy,
        workers: usize,
    ) -> Result<Self> {
        if backends.is_empty() {
            return Err(SchedError::NoBackends);
        }
        for b in &backends {
            if b.worker_slots == 0 {
                return Err(SchedError::NoSlots(b.name.clone()));
            }
        }
        let pool = if policy != ExecutionPolicy::Sequential && workers > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .expect("worker pool"),
            )
        } else {
            None
        };
        Ok(Self {
            backends,
            policy,
            pool,
        })
    }

    /// Single default backend, sequential policy.
    pub fn sequential_local() -> Self {
        Self::new(vec![BackendSpec::default()], ExecutionPolicy::Sequential, 1)
            .expect("default backend")
    }

    /// Single default backend with `slots` modelled slots, parallel policy and
    /// `workers` host threads.
    pub fn parallel_local(slots: usize, workers: usize) -> Self {
        Self::new(
            vec![BackendSpec::default().with_slots(slots)],
            ExecutionPolicy::ParallelOneBackend,
            workers,
        )
        .expect("default backend")
    }

    pub fn policy(&self) -> ExecutionPolicy {
        self.policy
    }

    /// Whether this executor owns a multi-threaded pool.
    pub fn is_concurrent(&self) -> bool {
        self.pool.is_some()
    }

    /// Run `op` inside this executor's pool (inline when there is none), so
    /// rayon iterators within use the executor's workers.
    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(op),
            None => op(),
        }
    }

    /// Run every independent task in `tasks` under this executor's host
    /// concurrency (in order when sequential). Results keep input order.
    pub fn run_tasks<T, O>(&self, tasks: &[T], f: impl Fn(&T) -> O + Sync) -> Vec<O>
    where
        T: Sync,
        O: Send,
    {
        match &self.pool {
            Some(pool) => pool.install(|| tasks.par_iter().map(&f).collect()),
            None => tasks.iter().map(&f).collect(),
        }
    }

    /// Execute a batch of independent jobs: actually simulate every job
    /// (respecting the policy's concurrency) and fill the modelled ledger.
    /// Results are returned in job order regardless of completion order.
    pub fn execute_batch(&self, jobs: &[CircuitJob]) -> Result<(Vec<JobResult>, TimingLedger)> {
        let started = Instant::now();
        let outcomes = self.run_tasks(jobs, run_job);
        let mut results = Vec::with_capacity(outcomes.len());
        for outcome in outcomes {
            results.push(outcome?);
        }
        let mut ledger = model_timings(jobs, &self.backends, self.policy);
        ledger.measured_wall_clock_s = started.elapsed().as_secs_f64();
        Ok((results, ledger))
    }
}

/// Free-function form of batch execution for one-off runs.
pub fn execute_batch(
    jobs: &[CircuitJob],
    backends: Vec<BackendSpec>,
    policy: ExecutionPolicy,
    workers: usize,
) -> Result<(Vec<JobResult>, TimingLedger)> {
    Executor::new(backends, policy, workers)?.execute_batch(jobs)
}

/// Discrete-event layout of a batch. All jobs are submitted at t = 0; each
/// backend's slots become free after its queue delay and jobs claim the
/// earliest-free slot in job order.
fn model_timings(
    jobs: &[CircuitJob],
    backends: &[BackendSpec],
    policy: ExecutionPolicy,
) -> TimingLedger {
    let assignment: Vec<usize> = match policy {
        ExecutionPolicy::Sequential | ExecutionPolicy::ParallelOneBackend => {
            vec![0; jobs.len()]
        }
        ExecutionPolicy::ParallelMultiBackend => {
            (0..jobs.len()).map(|j| j % backends.len()).collect()
        }
    };
    // Sequential collapses backend 0 to a single effective slot.
    let slots_of = |b: &BackendSpec| match policy {
        ExecutionPolicy::Sequential => 1,
        _ => b.worker_slots,
    };
    let mut slot_free: Vec<Vec<f64>> = backends
        .iter()
        .map(|b| vec![b.queue_delay_s; slots_of(b)])
        .collect();

    let mut entries = Vec::with_capacity(jobs.len());
    let mut qpu = 0.0;
    let mut max_finish: f64 = 0.0;
    for (job, &b_idx) in jobs.iter().zip(&assignment) {
        let backend = &backends[b_idx];
        let slots = &mut slot_free[b_idx];
        let slot = slots
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap().then(a.0.cmp(&b.0)))
            .map(|(i, _)| i)
            .expect("backend has slots");
        let start = slots[slot];
        let finish = start + backend.service_time_s;
        slots[slot] = finish;
        qpu += backend.service_time_s;
        max_finish = max_finish.max(finish);
        entries.push(JobTiming {
            job_id: job.id,
            backend: backend.name.clone(),
            submit_s: 0.0,
            start_s: start,
            finish_s: finish,
        });
    }
    TimingLedger {
        entries,
        modelled_qpu_s: qpu,
        modelled_makespan_s: if jobs.is_empty() { 0.0 } else { max_finish },
        measured_wall_clock_s: 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::job::{JobOutput, ShotSpec};
    use quantum_sim::rng::derive_seed;
    use quantum_sim::AnnealSchedule;
    use qubo_core::{random_qubo, IsingModel};
    use std::collections::BTreeMap;

    fn toy_model(bias: f64) -> IsingModel {
        IsingModel::new(vec![bias, -bias, 0.5], BTreeMap::new(), 0.0)
    }

    fn toy_jobs(count: usize, shots: usize) -> Vec<CircuitJob> {
        let schedule = AnnealSchedule::trotterized(5).unwrap();
        (0..count)
            .map(|i| CircuitJob {
                id: i as u64,
                model: toy_model(0.2 + i as f64 * 0.1),
                schedule: schedule.clone(),
                depth: 5,
                shots: ShotSpec::Bitstrings {
                    shots,
                    readout_flip: 0.0,
                },
                seed: derive_seed(99, &[i as u64]),
                subset_index: i,
                iteration: 0,
            })
            .collect()
    }

    fn four_backends() -> Vec<BackendSpec> {
        (0..4)
            .map(|i| BackendSpec::named(format!("qpu{i}")))
            .collect()
    }

    #[test]
    fn sequential_twenty_jobs_makespan() {
        let jobs = toy_jobs(20, 4);
        let (results, ledger) = execute_batch(
            &jobs,
            vec![BackendSpec::default()],
            ExecutionPolicy::Sequential,
            1,
        )
        .unwrap();
        assert_eq!(results.len(), 20);
        assert_eq!(ledger.modelled_makespan_s, 60.0);
        assert_eq!(ledger.modelled_qpu_s, 60.0);
        // starts are strictly staggered by the service time
        assert_eq!(ledger.entries[1].start_s, 3.0);
        assert_eq!(ledger.entries[19].finish_s, 60.0);
    }

    #[test]
    fn four_backends_quarter_the_makespan() {
        let jobs = toy_jobs(20, 4);
        let (_, ledger) = execute_batch(
            &jobs,
            four_backends(),
            ExecutionPolicy::ParallelMultiBackend,
            2,
        )
        .unwrap();
        assert_eq!(ledger.modelled_makespan_s, 15.0);
        assert_eq!(ledger.modelled_qpu_s, 60.0);
    }

    #[test]
    fn qpu_seconds_invariant_across_policies() {
        let jobs = toy_jobs(11, 4);
        let single = vec![BackendSpec::default().with_slots(3)];
        let policies = [
            (ExecutionPolicy::Sequential, single.clone()),
            (ExecutionPolicy::ParallelOneBackend, single),
            (ExecutionPolicy::ParallelMultiBackend, four_backends()),
        ];
        let mut qpus = Vec::new();
        for (policy, backends) in policies {
            let (_, ledger) = execute_batch(&jobs, backends, policy, 2).unwrap();
            qpus.push(ledger.modelled_qpu_s);
        }
        assert_eq!(qpus[0], 33.0);
        assert!(qpus.iter().all(|&q| q == qpus[0]));
    }

    #[test]
    fn results_identical_across_policies() {
        let jobs = toy_jobs(8, 64);
        let (a, _) = execute_batch(
            &jobs,
            vec![BackendSpec::default()],
            ExecutionPolicy::Sequential,
            1,
        )
        .unwrap();
        let (b, _) = execute_batch(
            &jobs,
            vec![BackendSpec::default().with_slots(4)],
            ExecutionPolicy::ParallelOneBackend,
            2,
        )
        .unwrap();
        let (c, _) = execute_batch(
            &jobs,
            four_backends(),
            ExecutionPolicy::ParallelMultiBackend,
            2,
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn queue_delay_shifts_starts() {
        let jobs = toy_jobs(2, 4);
        let backends = vec![BackendSpec::named("slow").with_queue_delay(5.0)];
        let (_, ledger) =
            execute_batch(&jobs, backends, ExecutionPolicy::ParallelOneBackend, 1).unwrap();
        assert_eq!(ledger.entries[0].start_s, 5.0);
        assert_eq!(ledger.modelled_makespan_s, 11.0);
    }

    #[test]
    fn one_backend_slots_fill_greedily() {
        let jobs = toy_jobs(5, 4);
        let backends = vec![BackendSpec::default().with_slots(2)];
        let (_, ledger) =
            execute_batch(&jobs, backends, ExecutionPolicy::ParallelOneBackend, 2).unwrap();
        // ceil(5/2) waves of 3 s
        assert_eq!(ledger.modelled_makespan_s, 9.0);
    }

    #[test]
    fn empty_backend_list_rejected() {
        let jobs = toy_jobs(1, 1);
        assert!(matches!(
            execute_batch(&jobs, vec![], ExecutionPolicy::Sequential, 1),
            Err(SchedError::NoBackends)
        ));
    }

    #[test]
    fn failing_job_reports_its_id() {
        let mut jobs = toy_jobs(3, 4);
        jobs[1].depth = 99;
        let err = execute_batch(
            &jobs,
            vec![BackendSpec::default()],
            ExecutionPolicy::Sequential,
            1,
        )
        .unwrap_err();
        assert!(matches!(err, SchedError::JobFailed { job_id: 1, .. }));
    }

    #[test]
    fn parallel_wall_clock_not_slower_than_sequential() {
        // Heavier jobs so two workers have something to chew on.
        let n = 12;
        let schedule = AnnealSchedule::trotterized(5).unwrap();
        let jobs: Vec<CircuitJob> = (0..8)
            .map(|i| CircuitJob {
                id: i,
                model: random_qubo(n, -10.0, 10.0, i).unwrap().to_ising(),
                schedule: schedule.clone(),
                depth: 5,
                shots: ShotSpec::Expectations { shots: 2000 },
                seed: i,
                subset_index: i as usize,
                iteration: 0,
            })
            .collect();
        let seq =
            Executor::new(vec![BackendSpec::default()], ExecutionPolicy::Sequential, 1).unwrap();
        let par = Executor::new(
            vec![BackendSpec::default().with_slots(2)],
            ExecutionPolicy::ParallelOneBackend,
            2,
        )
        .unwrap();
        // Warm both paths once, then measure.
        seq.execute_batch(&jobs).unwrap();
        par.execute_batch(&jobs).unwrap();
        let (_, l_seq) = seq.execute_batch(&jobs).unwrap();
        let (_, l_par) = par.execute_batch(&jobs).unwrap();
        assert!(
            l_par.measured_wall_clock_s <= l_seq.measured_wall_clock_s * 1.25,
            "parallel {} vs sequential {}",
            l_par.measured_wall_clock_s,
            l_seq.measured_wall_clock_s
        );
    }

    #[test]
    fn expectation_jobs_return_frequencies() {
        let job = CircuitJob {
            id: 7,
            model: toy_model(1.0),
            schedule: AnnealSchedule::trotterized(5).unwrap(),
            depth: 3,
            shots: ShotSpec::ExactExpectations,
            seed: 0,
            subset_index: 0,
            iteration: 2,
        };
        let result = run_job(&job).unwrap();
        match result.output {
            JobOutput::Expectations(e) => {
                assert_eq!(e.len(), 3);
                assert!(e.iter().all(|&p| (0.0..=1.0).contains(&p)));
            }
            other => panic!("unexpected output {other:?}"),
        }
    }
}
