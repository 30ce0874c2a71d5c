use serde::{Deserialize, Serialize};

/// Modelled timing of one job on the discrete-event clock.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobTiming {
    pub job_id: u64,
    pub backend: String,
    pub submit_s: f64,
    pub start_s: f64,
    pub finish_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LedgerTotals {
    pub modelled_qpu_s: f64,
    pub modelled_makespan_s: f64,
    pub measured_wall_clock_s: f64,
}

/// Per-job modelled timings plus batch totals.
///
/// `modelled_qpu_s` is the sum of service times of executed jobs and is
/// invariant across execution policies; `modelled_makespan_s` is
/// `max(finish) − min(submit)` on the modelled clock;
/// `measured_wall_clock_s` is host time actually spent computing the batch.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TimingLedger {
    pub entries: Vec<JobTiming>,
    pub modelled_qpu_s: f64,
    pub modelled_makespan_s: f64,
    pub measured_wall_clock_s: f64,
}

impl TimingLedger {
    pub fn totals(&self) -> LedgerTotals {
        LedgerTotals {
            modelled_qpu_s: self.modelled_qpu_s,
            modelled_makespan_s: self.modelled_makespan_s,
            measured_wall_clock_s: self.measured_wall_clock_s,
        }
    }

    /// Fold another batch in. Batches are separated by barriers, so makespans
    /// and wall clocks add while per-job entries concatenate.
    pub fn absorb(&mut self, other: TimingLedger) {
        self.entries.extend(other.entries);
        self.modelled_qpu_s += other.modelled_qpu_s;
        self.modelled_makespan_s += other.modelled_makespan_s;
        self.measured_wall_clock_s += other.measured_wall_clock_s;
    }

    /// CSV export: `job_id,backend,submit_s,start_s,finish_s`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("job_id,backend,submit_s,start_s,finish_s\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{:.6},{:.6},{:.6}\n",
                e.job_id, e.backend, e.submit_s, e.start_s, e.finish_s
            ));
        }
        out
    }

    /// JSON footer with the batch totals, written alongside the CSV.
    pub fn totals_json(&self) -> String {
        serde_json::to_string_pretty(&self.totals()).expect("totals serialise")
    }

    /// Export the per-job CSV plus the totals footer file.
    pub fn write_files(
        &self,
        csv_path: impl AsRef<std::path::Path>,
        totals_path: impl AsRef<std::path::Path>,
    ) -> std::io::Result<()> {
        std::fs::write(csv_path, self.to_csv())?;
        std::fs::write(totals_path, self.totals_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_shape() {
        let ledger = TimingLedger {
            entries: vec![JobTiming {
                job_id: 3,
                backend: "qpu0".into(),
                submit_s: 0.0,
                start_s: 1.5,
                finish_s: 4.5,
            }],
            modelled_qpu_s: 3.0,
            modelled_makespan_s: 4.5,
            measured_wall_clock_s: 0.001,
        };
        let csv = ledger.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("job_id,backend,submit_s,start_s,finish_s")
        );
        assert_eq!(lines.next(), Some("3,qpu0,0.000000,1.500000,4.500000"));
        let totals: LedgerTotals = serde_json::from_str(&ledger.totals_json()).unwrap();
        assert_eq!(totals.modelled_qpu_s, 3.0);
    }

    #[test]
    fn file_export_round_trips() {
        let ledger = TimingLedger {
            entries: vec![JobTiming {
                job_id: 0,
                backend: "local".into(),
                submit_s: 0.0,
                start_s: 0.0,
                finish_s: 3.0,
            }],
            modelled_qpu_s: 3.0,
            modelled_makespan_s: 3.0,
            measured_wall_clock_s: 0.0,
        };
        let dir = std::env::temp_dir().join("ledger-export-test");
        std::fs::create_dir_all(&dir).unwrap();
        let csv = dir.join("ledger.csv");
        let totals = dir.join("totals.json");
        ledger.write_files(&csv, &totals).unwrap();
        assert_eq!(std::fs::read_to_string(&csv).unwrap(), ledger.to_csv());
        let read: LedgerTotals =
            serde_json::from_str(&std::fs::read_to_string(&totals).unwrap()).unwrap();
        assert_eq!(read, ledger.totals());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn absorb_adds_totals() {
        let mut a = TimingLedger {
            modelled_qpu_s: 6.0,
            modelled_makespan_s: 6.0,
            measured_wall_clock_s: 0.5,
            ..Default::default()
        };
        a.absorb(TimingLedger {
            modelled_qpu_s: 3.0,
            modelled_makespan_s: 3.0,
            measured_wall_clock_s: 0.25,
            ..Default::default()
        });
        assert_eq!(a.modelled_qpu_s, 9.0);
        assert_eq!(a.modelled_makespan_s, 9.0);
        assert_eq!(a.measured_wall_clock_s, 0.75);
    }
}
