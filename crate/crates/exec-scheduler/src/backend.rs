use serde::{Deserialize, Serialize};

/// What a backend stands in for. Purely descriptive: readout noise is
/// configured per run, not per backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendKind {
    LocalExact,
    LocalNoisy,
}

/// Modelled execution target.
///
/// `service_time_s` is the modelled seconds one circuit job occupies the
/// backend (default 3, the observed per-circuit cost on hardware);
/// `queue_delay_s` is a fixed modelled delay before each job batch;
/// `worker_slots` is how many jobs the backend can serve concurrently.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackendSpec {
    pub name: String,
    pub kind: BackendKind,
    pub service_time_s: f64,
    pub queue_delay_s: f64,
    pub worker_slots: usize,
}

impl Default for BackendSpec {
    fn default() -> Self {
        Self {
            name: "local".to_string(),
            kind: BackendKind::LocalExact,
            service_time_s: 3.0,
            queue_delay_s: 0.0,
            worker_slots: 1,
        }
    }
}

impl BackendSpec {
    pub fn named(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn with_slots(mut self, slots: usize) -> Self {
        self.worker_slots = slots;
        self
    }

    pub fn with_service_time(mut self, seconds: f64) -> Self {
        self.service_time_s = seconds;
        self
    }

    pub fn with_queue_delay(mut self, seconds: f64) -> Self {
        self.queue_delay_s = seconds;
        self
    }
}
