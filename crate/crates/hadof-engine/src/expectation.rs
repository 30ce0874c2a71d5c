use serde::{Deserialize, Serialize};

/// Per-variable probabilities `P(x_i = 1)` carried across iterations.
///
/// Entries come from measurement frequencies so they stay in `[0, 1]` by
/// construction; `set` clamps anyway to keep the invariant under any caller.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationVector {
    values: Vec<f64>,
}

impl ExpectationVector {
    /// The initialisation used by the solver: everything at 0.5.
    pub fn uniform(n: usize) -> Self {
        Self {
            values: vec![0.5; n],
        }
    }

    pub fn from_values(values: Vec<f64>) -> Self {
        let mut v = Self { values };
        for x in &mut v.values {
            *x = x.clamp(0.0, 1.0);
        }
        v
    }

    /// Indicator expectations of a concrete assignment.
    pub fn from_assignment(bits: &[u8]) -> Self {
        Self {
            values: bits.iter().map(|&b| b as f64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn set(&mut self, i: usize, value: f64) {
        self.values[i] = value.clamp(0.0, 1.0);
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}
