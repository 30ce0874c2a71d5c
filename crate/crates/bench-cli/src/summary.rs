use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;

/// Per-solver aggregate over a results CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverSummary {
    pub solver: String,
    pub runs: usize,
    pub failures: usize,
    /// Rows whose accuracy is 0, the mixed-sign flag value.
    pub flagged: usize,
    pub mean_best_acc: f64,
    pub std_best_acc: f64,
    pub mean_avg_acc: f64,
    pub std_avg_acc: f64,
    pub mean_wall_s: f64,
    pub mean_qpu_s: f64,
    pub mean_makespan_s: f64,
}

/// Fold a results CSV into per-solver means and standard deviations,
/// flagging rows with invalid (zero) accuracy. Returns the summaries plus a
/// rendered console table.
pub fn report_summary(csv_path: &Path) -> anyhow::Result<(Vec<SolverSummary>, String)> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_path(csv_path)
        .with_context(|| format!("opening {}", csv_path.display()))?;

    struct Acc {
        best: Vec<f64>,
        avg: Vec<f64>,
        wall: Vec<f64>,
        qpu: Vec<f64>,
        makespan: Vec<f64>,
        failures: usize,
        flagged: usize,
    }
    let mut order: Vec<String> = Vec::new();
    let mut by_solver: std::collections::HashMap<String, Acc> = std::collections::HashMap::new();

    for record in reader.records() {
        let record = record?;
        let solver = record.get(0).unwrap_or("").to_string();
        if solver.is_empty() {
            continue;
        }
        if !by_solver.contains_key(&solver) {
            order.push(solver.clone());
            by_solver.insert(
                solver.clone(),
                Acc {
                    best: vec![],
                    avg: vec![],
                    wall: vec![],
                    qpu: vec![],
                    makespan: vec![],
                    failures: 0,
                    flagged: 0,
                },
            );
        }
        let acc = by_solver.get_mut(&solver).expect("just inserted");
        let parse = |i: usize| record.get(i).and_then(|s| s.parse::<f64>().ok());
        match (parse(3), parse(4), parse(5), parse(6), parse(7)) {
            (Some(best), Some(avg), Some(wall), Some(qpu), Some(makespan)) => {
                if best == 0.0 || avg == 0.0 {
                    acc.flagged += 1;
                }
                acc.best.push(best);
                acc.avg.push(avg);
                acc.wall.push(wall);
                acc.qpu.push(qpu);
                acc.makespan.push(makespan);
            }
            _ => acc.failures += 1,
        }
    }

    let mean = |v: &[f64]| {
        if v.is_empty() {
            0.0
        } else {
            v.iter().sum::<f64>() / v.len() as f64
        }
    };
    let std = |v: &[f64]| {
        if v.len() < 2 {
            return 0.0;
        }
        let m = mean(v);
        (v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() as f64 - 1.0)).sqrt()
    };

    let summaries: Vec<SolverSummary> = order
        .iter()
        .map(|solver| {
            let acc = &by_solver[solver];
            SolverSummary {
                solver: solver.clone(),
                runs: acc.best.len() + acc.failures,
                failures: acc.failures,
                flagged: acc.flagged,
                mean_best_acc: mean(&acc.best),
                std_best_acc: std(&acc.best),
                mean_avg_acc: mean(&acc.avg),
                std_avg_acc: std(&acc.avg),
                mean_wall_s: mean(&acc.wall),
                mean_qpu_s: mean(&acc.qpu),
                mean_makespan_s: mean(&acc.makespan),
            }
        })
        .collect();

    let mut table = String::new();
    writeln!(
        table,
        "{:<18} {:>5} {:>18} {:>18} {:>10} {:>10} {:>10} {:>6}",
        "solver", "runs", "best_acc", "avg_acc", "wall_s", "qpu_s", "makespan", "flags"
    )
    .expect("string write");
    for s in &summaries {
        writeln!(
            table,
            "{:<18} {:>5} {:>9.4}±{:>7.4} {:>9.4}±{:>7.4} {:>10.4} {:>10.2} {:>10.2} {:>6}",
            s.solver,
            s.runs,
            s.mean_best_acc,
            s.std_best_acc,
            s.mean_avg_acc,
            s.std_avg_acc,
            s.mean_wall_s,
            s.mean_qpu_s,
            s.mean_makespan_s,
            if s.failures > 0 || s.flagged > 0 {
                format!("{}+{}", s.failures, s.flagged)
            } else {
                "-".to_string()
            }
        )
        .expect("string write");
    }
    Ok((summaries, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn temp_csv(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn summarises_per_solver() {
        let csv = "solver,n,rep,best_acc,avg_acc,wall_s,modelled_qpu_s,makespan_s\n\
                   sa,10,0,1.000000,0.900000,0.100000,0.000000,0.000000\n\
                   sa,10,1,0.900000,0.700000,0.300000,0.000000,0.000000\n\
                   hadof-sequential,10,0,1.000000,0.800000,0.050000,36.000000,36.000000\n";
        let f = temp_csv(csv);
        let (summaries, table) = report_summary(f.path()).unwrap();
        assert_eq!(summaries.len(), 2);
        let sa = &summaries[0];
        assert_eq!(sa.solver, "sa");
        assert_eq!(sa.runs, 2);
        assert!((sa.mean_best_acc - 0.95).abs() < 1e-9);
        assert!((sa.mean_avg_acc - 0.8).abs() < 1e-9);
        assert!(sa.std_best_acc > 0.0);
        assert!(table.contains("hadof-sequential"));
    }

    #[test]
    fn mean_of_constant_column_is_the_constant() {
        let csv = "solver,n,rep,best_acc,avg_acc,wall_s,modelled_qpu_s,makespan_s\n\
                   brute,4,0,1.000000,1.000000,0.000000,0.000000,0.000000\n\
                   brute,4,1,1.000000,1.000000,0.000000,0.000000,0.000000\n";
        let f = temp_csv(csv);
        let (summaries, _) = report_summary(f.path()).unwrap();
        assert_eq!(summaries[0].mean_best_acc, 1.0);
        assert_eq!(summaries[0].std_best_acc, 0.0);
    }

    #[test]
    fn flags_invalid_and_failed_rows() {
        let csv = "solver,n,rep,best_acc,avg_acc,wall_s,modelled_qpu_s,makespan_s\n\
                   full-qaoa,30,0,,,,,\n\
                   full-qaoa,10,1,0.000000,0.000000,0.100000,0.000000,0.000000\n";
        let f = temp_csv(csv);
        let (summaries, _) = report_summary(f.path()).unwrap();
        assert_eq!(summaries[0].failures, 1);
        assert_eq!(summaries[0].flagged, 1);
        assert_eq!(summaries[0].runs, 2);
    }

    #[test]
    fn empty_csv_yields_empty_table() {
        let f = temp_csv("solver,n,rep,best_acc,avg_acc,wall_s,modelled_qpu_s,makespan_s\n");
        let (summaries, table) = report_summary(f.path()).unwrap();
        assert!(summaries.is_empty());
        assert_eq!(table.lines().count(), 1);
    }
}
