use qubo_core::BinaryAssignment;
use serde::{Deserialize, Serialize};

use crate::{EngineError, Result};

/// Everything one solve produces: the aggregated samples, their objectives,
/// the expectation trajectory and both timing views.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub n: usize,
    pub best_assignment: BinaryAssignment,
    pub best_objective: f64,
    /// Objective of every aggregated global sample, in draw order.
    pub sample_objectives: Vec<f64>,
    pub final_expectations: Vec<f64>,
    /// Host seconds around the solve call only.
    pub wall_clock_s: f64,
    /// Modelled seconds summed over executed circuit jobs.
    pub modelled_qpu_s: f64,
    /// Modelled makespan accumulated across iteration batches.
    pub modelled_makespan_s: f64,
    pub jobs_executed: usize,
    /// Expectation snapshot after each iteration.
    pub expectation_trace: Vec<Vec<f64>>,
}

impl SolveReport {
    /// Mean of `sample_objectives`.
    pub fn average_objective(&self) -> f64 {
        self.sample_objectives.iter().sum::<f64>() / self.sample_objectives.len() as f64
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// JSON of the deterministic content: measured host time is zeroed so
    /// byte-identical output means identical algorithmic results.
    pub fn canonical_json(&self) -> String {
        let mut canon = self.clone();
        canon.wall_clock_s = 0.0;
        canon.to_json()
    }
}

/// Score of `objective` against a reference optimum (a ratio with 1 meaning
/// as good as the reference).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Accuracy {
    pub value: f64,
    /// False when the two objectives have mixed signs and no ratio is
    /// meaningful; `value` is 0 in that case.
    pub valid: bool,
}

/// Normalised solution quality. Both negative (the benchmarked minimisation
/// regime) scores `objective/reference`; both positive scores
/// `reference/objective`; mixed signs score 0 and flag the result.
pub fn accuracy(objective: f64, reference: f64) -> Result<Accuracy> {
    if reference == 0.0 {
        return Err(EngineError::ZeroReference);
    }
    let value = if reference < 0.0 && objective < 0.0 {
        objective / reference
    } else if reference > 0.0 && objective > 0.0 {
        reference / objective
    } else {
        return Ok(Accuracy {
            value: 0.0,
            valid: false,
        });
    };
    Ok(Accuracy { value, valid: true })
}
