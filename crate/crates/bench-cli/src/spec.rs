use std::path::PathBuf;

use exec_scheduler::{BackendSpec, ExecutionPolicy, Executor};
use hadof_engine::HadofConfig;
use serde::{Deserialize, Serialize};

/// Where the benchmark problem(s) come from.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemSource {
    /// Seeded dense uniform instances; `sizes` sweeps several problem sizes
    /// with the same generator settings.
    Random {
        #[serde(default)]
        n: Option<usize>,
        #[serde(default)]
        sizes: Vec<usize>,
        lo: f64,
        hi: f64,
        seed: u64,
    },
    /// A QUBO JSON file.
    QuboFile { path: PathBuf },
    /// A FASTA file run through the overlap-graph encoder.
    Fasta {
        path: PathBuf,
        #[serde(default = "default_encoding")]
        encoding: String,
        #[serde(default = "default_min_overlap")]
        min_overlap: usize,
        #[serde(default = "default_penalty")]
        penalty: f64,
    },
}

fn default_encoding() -> String {
    "edge".to_string()
}

fn default_min_overlap() -> usize {
    3
}

fn default_penalty() -> f64 {
    1.0
}

impl ProblemSource {
    /// All requested sizes for random sources (single `n` plus the sweep).
    pub fn random_sizes(&self) -> Vec<usize> {
        match self {
            ProblemSource::Random { n, sizes, .. } => {
                let mut all: Vec<usize> = n.iter().copied().chain(sizes.iter().copied()).collect();
                all.dedup();
                all
            }
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    HadofSequential,
    HadofParallel,
    FullQaoa,
    Sa,
    Brute,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::HadofSequential => "hadof-sequential",
            SolverKind::HadofParallel => "hadof-parallel",
            SolverKind::FullQaoa => "full-qaoa",
            SolverKind::Sa => "sa",
            SolverKind::Brute => "brute",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyKind {
    Sequential,
    ParallelOneBackend,
    ParallelMultiBackend,
}

impl From<PolicyKind> for ExecutionPolicy {
    fn from(p: PolicyKind) -> Self {
        match p {
            PolicyKind::Sequential => ExecutionPolicy::Sequential,
            PolicyKind::ParallelOneBackend => ExecutionPolicy::ParallelOneBackend,
            PolicyKind::ParallelMultiBackend => ExecutionPolicy::ParallelMultiBackend,
        }
    }
}

/// Declarative experiment description, read from JSON with flag overrides.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub problem: ProblemSource,
    pub solvers: Vec<SolverKind>,
    /// Base solver configuration; the per-repetition seed is derived from the
    /// experiment seed, not taken from here.
    #[serde(default)]
    pub hadof: HadofConfig,
    /// Modelled backends for parallel runs (a single default backend with
    /// four slots when omitted).
    #[serde(default)]
    pub backends: Option<Vec<BackendSpec>>,
    #[serde(default)]
    pub policy: Option<PolicyKind>,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default = "default_reps")]
    pub repetitions: usize,
    pub output_dir: PathBuf,
    /// Master seed; mandatory for `bench` runs (supplied via `--seed`).
    #[serde(default)]
    pub seed: Option<u64>,
    /// Write measured wall clocks as zero so output files are byte-stable.
    #[serde(default)]
    pub deterministic_timing: bool,
    /// Run the repetition × solver cells of each problem concurrently.
    /// Accuracy results are unchanged; measured wall clocks contend, so keep
    /// this off for timing studies.
    #[serde(default)]
    pub concurrent_reps: bool,
}

fn default_workers() -> usize {
    8
}

fn default_reps() -> usize {
    1
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), String> {
        if self.solvers.is_empty() {
            return Err("at least one solver is required".into());
        }
        if self.repetitions == 0 {
            return Err("repetitions must be at least 1".into());
        }
        if let ProblemSource::Random {
            n, sizes, lo, hi, ..
        } = &self.problem
        {
            if n.is_none() && sizes.is_empty() {
                return Err("random problem needs n or sizes".into());
            }
            if !(lo < hi) {
                return Err("random problem needs lo < hi".into());
            }
        }
        if let ProblemSource::Fasta { encoding, .. } = &self.problem {
            if encoding != "edge" && encoding != "permutation" {
                return Err(format!("unknown encoding '{encoding}'"));
            }
        }
        Ok(())
    }

    /// Executor for a HADOF run in the given mode, honouring any explicit
    /// backend/policy configuration.
    pub fn executor_for(&self, mode: hadof_engine::HadofMode) -> Executor {
        let default_policy = match mode {
            hadof_engine::HadofMode::Sequential => ExecutionPolicy::Sequential,
            hadof_engine::HadofMode::Parallel => ExecutionPolicy::ParallelOneBackend,
        };
        let policy = match mode {
            hadof_engine::HadofMode::Sequential => ExecutionPolicy::Sequential,
            hadof_engine::HadofMode::Parallel => {
                self.policy.map(Into::into).unwrap_or(default_policy)
            }
        };
        let backends = self
            .backends
            .clone()
            .unwrap_or_else(|| vec![BackendSpec::default().with_slots(4)]);
        let workers = match mode {
            hadof_engine::HadofMode::Sequential => 1,
            hadof_engine::HadofMode::Parallel => self.workers.max(1),
        };
        Executor::new(backends, policy, workers).expect("non-empty backend list")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trips_through_json() {
        let text = r#"{
            "problem": {"random": {"n": 100, "lo": -10.0, "hi": 10.0, "seed": 1}},
            "solvers": ["sa", "hadof-sequential", "hadof-parallel"],
            "repetitions": 5,
            "output_dir": "out"
        }"#;
        let spec: ExperimentSpec = serde_json::from_str(text).unwrap();
        spec.validate().unwrap();
        assert_eq!(spec.solvers.len(), 3);
        assert_eq!(spec.repetitions, 5);
        assert_eq!(spec.workers, 8);
        assert_eq!(spec.problem.random_sizes(), vec![100]);
        let back: ExperimentSpec =
            serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back.solvers, spec.solvers);
    }

    #[test]
    fn validation_catches_bad_specs() {
        let mut spec: ExperimentSpec = serde_json::from_str(
            r#"{
            "problem": {"random": {"lo": -1.0, "hi": 1.0, "seed": 1}},
            "solvers": ["sa"],
            "output_dir": "out"
        }"#,
        )
        .unwrap();
        assert!(spec.validate().is_err(), "no sizes");
        spec.problem = ProblemSource::Random {
            n: Some(10),
            sizes: vec![],
            lo: 2.0,
            hi: 1.0,
            seed: 0,
        };
        assert!(spec.validate().is_err(), "bad bounds");
        spec.problem = ProblemSource::Random {
            n: Some(10),
            sizes: vec![],
            lo: -1.0,
            hi: 1.0,
            seed: 0,
        };
        spec.solvers.clear();
        assert!(spec.validate().is_err(), "no solvers");
    }
}
