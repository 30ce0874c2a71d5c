use serde::{Deserialize, Serialize};

use crate::{EngineError, Result};

/// Update semantics for the sweep over sub-problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HadofMode {
    /// Updates apply immediately, so later subsets in the same sweep see them.
    Sequential,
    /// All sub-problems of a sweep build from the previous iteration's
    /// snapshot; updates commit at the iteration barrier.
    Parallel,
}

/// Solver parameters. Defaults mirror the benchmarked setup: subsets of 5,
/// 5 layers, 500 shots per expectation estimate and 5000 final samples per
/// circuit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HadofConfig {
    pub k: usize,
    pub p: usize,
    pub shots_expectation: usize,
    pub shots_final: usize,
    pub mode: HadofMode,
    pub seed: u64,
    pub readout_flip: f64,
    pub schedule_scale: f64,
    /// Replace shot-based expectation estimates with exact statevector
    /// expectations; useful for deterministic convergence tests.
    pub exact_expectations: bool,
}

impl Default for HadofConfig {
    fn default() -> Self {
        Self {
            k: 5,
            p: 5,
            shots_expectation: 500,
            shots_final: 5000,
            mode: HadofMode::Sequential,
            seed: 0,
            readout_flip: 0.0,
            schedule_scale: 1.0,
            exact_expectations: false,
        }
    }
}

impl HadofConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(EngineError::Config("k must be at least 1".into()));
        }
        if self.p == 0 {
            return Err(EngineError::Config("p must be at least 1".into()));
        }
        if self.shots_expectation == 0 || self.shots_final == 0 {
            return Err(EngineError::Config("shot counts must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&self.readout_flip) {
            return Err(EngineError::Config(format!(
                "readout_flip {} outside [0, 1)",
                self.readout_flip
            )));
        }
        if !(self.schedule_scale > 0.0) {
            return Err(EngineError::Config(
                "schedule_scale must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn with_mode(mut self, mode: HadofMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid_and_match_the_benchmarked_setup() {
        let c = HadofConfig::default();
        c.validate().unwrap();
        assert_eq!((c.k, c.p), (5, 5));
        assert_eq!(c.shots_expectation, 500);
        assert_eq!(c.shots_final, 5000);
        assert_eq!(c.readout_flip, 0.0);
        assert_eq!(c.schedule_scale, 1.0);
    }

    #[test]
    fn invalid_configs_rejected() {
        for bad in [
            HadofConfig {
                k: 0,
                ..Default::default()
            },
            HadofConfig {
                p: 0,
                ..Default::default()
            },
            HadofConfig {
                shots_final: 0,
                ..Default::default()
            },
            HadofConfig {
                readout_flip: 1.0,
                ..Default::default()
            },
            HadofConfig {
                schedule_scale: 0.0,
                ..Default::default()
            },
        ] {
            assert!(bad.validate().is_err());
        }
    }
}
