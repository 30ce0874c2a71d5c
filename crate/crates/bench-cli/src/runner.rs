use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, Context};
use serde::Serialize;

use baselines::{simulated_annealing, ReferenceCache, SaConfig};
use genome_assembly::{compute_overlaps, encode_edge_qubo, encode_permutation_qubo, parse_fasta};
use hadof_engine::{accuracy, full_qaoa_solve, hadof_solve, HadofMode, SolveReport};
use quantum_sim::rng::derive_seed;
use qubo_core::{brute_force, random_qubo, QuboProblem};

use crate::spec::{ExperimentSpec, ProblemSource, SolverKind};
use crate::RESULT_COLUMNS;

// Seed-stream tags for the experiment-level derivations.
const STREAM_INSTANCE: u64 = 0;
const STREAM_REFERENCE: u64 = 1;
const STREAM_SOLVER: u64 = 2;

/// Files produced by one experiment run.
#[derive(Debug)]
pub struct RunArtifacts {
    pub csv_path: PathBuf,
    pub run_json_paths: Vec<PathBuf>,
    pub series_paths: Vec<PathBuf>,
    /// Count of solver cells that failed (recorded per-row, run continues).
    pub failures: usize,
}

struct ProblemInstance {
    n: usize,
    qubo: QuboProblem,
}

#[derive(Serialize)]
struct RunRecord<'a> {
    solver: &'a str,
    n: usize,
    rep: usize,
    reference_objective: f64,
    best_objective: Option<f64>,
    best_acc: Option<f64>,
    avg_acc: Option<f64>,
    acc_valid: bool,
    wall_s: f64,
    report: Option<&'a SolveReport>,
    error: Option<String>,
}

struct Row {
    solver: String,
    n: usize,
    rep: usize,
    metrics: Option<RowMetrics>,
}

struct RowMetrics {
    best_acc: f64,
    avg_acc: f64,
    wall_s: f64,
    qpu_s: f64,
    makespan_s: f64,
}

fn resolve_problems(spec: &ExperimentSpec) -> anyhow::Result<Vec<ProblemInstance>> {
    match &spec.problem {
        ProblemSource::Random { lo, hi, seed, .. } => spec
            .problem
            .random_sizes()
            .into_iter()
            .map(|n| {
                let instance_seed = derive_seed(*seed, &[STREAM_INSTANCE, n as u64]);
                Ok(ProblemInstance {
                    n,
                    qubo: random_qubo(n, *lo, *hi, instance_seed)?,
                })
            })
            .collect(),
        ProblemSource::QuboFile { path } => {
            let qubo =
                qubo_core::io::load(path).with_context(|| format!("loading {}", path.display()))?;
            Ok(vec![ProblemInstance { n: qubo.n(), qubo }])
        }
        ProblemSource::Fasta {
            path,
            encoding,
            min_overlap,
            penalty,
        } => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let reads = parse_fasta(&text)?;
            let graph = compute_overlaps(&reads, *min_overlap);
            let (qubo, _) = match encoding.as_str() {
                "edge" => encode_edge_qubo(&graph, *penalty)?,
                "permutation" => encode_permutation_qubo(&graph, *penalty)?,
                other => return Err(anyhow!("unknown encoding '{other}'")),
            };
            Ok(vec![ProblemInstance { n: qubo.n(), qubo }])
        }
    }
}

fn mean_sample_accuracy(objectives: &[f64], reference: f64) -> (f64, bool) {
    let mut total = 0.0;
    let mut all_valid = true;
    for &obj in objectives {
        match accuracy(obj, reference) {
            Ok(a) => {
                total += a.value;
                all_valid &= a.valid;
            }
            Err(_) => all_valid = false,
        }
    }
    (total / objectives.len() as f64, all_valid)
}

/// Run every (size, repetition, solver) cell of the experiment.
///
/// Writes per-run JSON under `output_dir/runs/`, the aggregate CSV as
/// `output_dir/results.csv` and plot-ready `series_*.csv` files (mean and
/// standard deviation per solver and problem size). Solver failures are
/// recorded as rows with empty metric fields and do not stop the run.
pub fn run_experiment(spec: &ExperimentSpec) -> anyhow::Result<RunArtifacts> {
    spec.validate().map_err(|e| anyhow!(e))?;
    let master = spec.seed.unwrap_or(0);
    let problems = resolve_problems(spec)?;

    std::fs::create_dir_all(spec.output_dir.join("runs"))?;
    let cache = ReferenceCache::new();
    let seq_executor = spec.executor_for(HadofMode::Sequential);
    let par_executor = spec.executor_for(HadofMode::Parallel);

    let mut rows: Vec<Row> = Vec::new();
    let mut run_json_paths = Vec::new();
    let mut failures = 0usize;

    for (size_idx, problem) in problems.iter().enumerate() {
        let n = problem.n;
        let ref_config = SaConfig {
            seed: derive_seed(master, &[STREAM_REFERENCE, n as u64]),
            ..SaConfig::default()
        };
        let ref_started = Instant::now();
        let reference = cache.reference_objective(&problem.qubo, &ref_config);
        let ref_wall = if spec.deterministic_timing {
            0.0
        } else {
            ref_started.elapsed().as_secs_f64()
        };
        rows.push(Row {
            solver: "sa-reference".into(),
            n,
            rep: 0,
            metrics: Some(RowMetrics {
                best_acc: 1.0,
                avg_acc: 1.0,
                wall_s: ref_wall,
                qpu_s: 0.0,
                makespan_s: 0.0,
            }),
        });

        let cells: Vec<(usize, SolverKind, u64)> = (0..spec.repetitions)
            .flat_map(|rep| {
                spec.solvers
                    .iter()
                    .enumerate()
                    .map(move |(solver_idx, &solver)| (rep, solver_idx, solver))
            })
            .map(|(rep, solver_idx, solver)| {
                let seed = derive_seed(
                    master,
                    &[
                        STREAM_SOLVER,
                        size_idx as u64,
                        rep as u64,
                        solver_idx as u64,
                    ],
                );
                (rep, solver, seed)
            })
            .collect();
        let run_one = |&(_, solver, seed): &(usize, SolverKind, u64)| {
            run_cell(
                spec,
                problem,
                solver,
                seed,
                reference,
                &seq_executor,
                &par_executor,
            )
        };
        let outcomes: Vec<anyhow::Result<CellOutcome>> = if spec.concurrent_reps {
            use rayon::prelude::*;
            cells.par_iter().map(run_one).collect()
        } else {
            cells.iter().map(run_one).collect()
        };

        for (&(rep, solver, _), cell) in cells.iter().zip(&outcomes) {
            let (metrics, record) = match cell {
                Ok(outcome) => {
                    let wall = if spec.deterministic_timing {
                        0.0
                    } else {
                        outcome.wall_s
                    };
                    (
                        Some(RowMetrics {
                            best_acc: outcome.best_acc,
                            avg_acc: outcome.avg_acc,
                            wall_s: wall,
                            qpu_s: outcome.qpu_s,
                            makespan_s: outcome.makespan_s,
                        }),
                        RunRecord {
                            solver: solver.name(),
                            n,
                            rep,
                            reference_objective: reference,
                            best_objective: Some(outcome.best_objective),
                            best_acc: Some(outcome.best_acc),
                            avg_acc: Some(outcome.avg_acc),
                            acc_valid: outcome.acc_valid,
                            wall_s: wall,
                            report: outcome.report.as_ref(),
                            error: None,
                        },
                    )
                }
                Err(err) => {
                    failures += 1;
                    eprintln!("solver {} failed on n={n} rep={rep}: {err}", solver.name());
                    (
                        None,
                        RunRecord {
                            solver: solver.name(),
                            n,
                            rep,
                            reference_objective: reference,
                            best_objective: None,
                            best_acc: None,
                            avg_acc: None,
                            acc_valid: false,
                            wall_s: 0.0,
                            report: None,
                            error: Some(err.to_string()),
                        },
                    )
                }
            };
            let json_path = spec.output_dir.join("runs").join(format!(
                "{}_n{}_rep{}.json",
                solver.name(),
                n,
                rep
            ));
            std::fs::write(&json_path, serde_json::to_string_pretty(&record)?)?;
            run_json_paths.push(json_path);
            rows.push(Row {
                solver: solver.name().into(),
                n,
                rep,
                metrics,
            });
        }
    }

    let csv_path = spec.output_dir.join("results.csv");
    std::fs::write(&csv_path, render_csv(&rows))?;
    let series_paths = write_series(&spec.output_dir, &rows)?;

    Ok(RunArtifacts {
        csv_path,
        run_json_paths,
        series_paths,
        failures,
    })
}

struct CellOutcome {
    best_objective: f64,
    best_acc: f64,
    avg_acc: f64,
    acc_valid: bool,
    wall_s: f64,
    qpu_s: f64,
    makespan_s: f64,
    report: Option<SolveReport>,
}

fn run_cell(
    spec: &ExperimentSpec,
    problem: &ProblemInstance,
    solver: SolverKind,
    seed: u64,
    reference: f64,
    seq_executor: &exec_scheduler::Executor,
    par_executor: &exec_scheduler::Executor,
) -> anyhow::Result<CellOutcome> {
    match solver {
        SolverKind::HadofSequential | SolverKind::HadofParallel => {
            let mode = if solver == SolverKind::HadofSequential {
                HadofMode::Sequential
            } else {
                HadofMode::Parallel
            };
            let executor = if mode == HadofMode::Sequential {
                seq_executor
            } else {
                par_executor
            };
            let config = spec.hadof.clone().with_mode(mode).with_seed(seed);
            let report = hadof_solve(&problem.qubo, &config, executor)?;
            let best = accuracy(report.best_objective, reference)?;
            let (avg, avg_valid) = mean_sample_accuracy(&report.sample_objectives, reference);
            Ok(CellOutcome {
                best_objective: report.best_objective,
                best_acc: best.value,
                avg_acc: avg,
                acc_valid: best.valid && avg_valid,
                wall_s: report.wall_clock_s,
                qpu_s: report.modelled_qpu_s,
                makespan_s: report.modelled_makespan_s,
                report: Some(report),
            })
        }
        SolverKind::FullQaoa => {
            let config = spec.hadof.clone().with_seed(seed);
            let report = full_qaoa_solve(&problem.qubo, &config)?;
            let best = accuracy(report.best_objective, reference)?;
            let (avg, avg_valid) = mean_sample_accuracy(&report.sample_objectives, reference);
            Ok(CellOutcome {
                best_objective: report.best_objective,
                best_acc: best.value,
                avg_acc: avg,
                acc_valid: best.valid && avg_valid,
                wall_s: report.wall_clock_s,
                qpu_s: report.modelled_qpu_s,
                makespan_s: report.modelled_makespan_s,
                report: Some(report),
            })
        }
        SolverKind::Sa => {
            let config = SaConfig {
                seed,
                ..SaConfig::default()
            };
            let started = Instant::now();
            let result = simulated_annealing(&problem.qubo, &config);
            let wall = started.elapsed().as_secs_f64();
            let best = accuracy(result.best_objective, reference)?;
            let (avg, avg_valid) = mean_sample_accuracy(&result.read_objectives, reference);
            Ok(CellOutcome {
                best_objective: result.best_objective,
                best_acc: best.value,
                avg_acc: avg,
                acc_valid: best.valid && avg_valid,
                wall_s: wall,
                qpu_s: 0.0,
                makespan_s: 0.0,
                report: None,
            })
        }
        SolverKind::Brute => {
            let started = Instant::now();
            let (_, optimum) = brute_force(&problem.qubo)?;
            let wall = started.elapsed().as_secs_f64();
            let best = accuracy(optimum, reference)?;
            Ok(CellOutcome {
                best_objective: optimum,
                best_acc: best.value,
                avg_acc: best.value,
                acc_valid: best.valid,
                wall_s: wall,
                qpu_s: 0.0,
                makespan_s: 0.0,
                report: None,
            })
        }
    }
}

fn render_csv(rows: &[Row]) -> String {
    let mut out = String::from(RESULT_COLUMNS);
    out.push('\n');
    for row in rows {
        match &row.metrics {
            Some(m) => {
                writeln!(
                    out,
                    "{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6}",
                    row.solver,
                    row.n,
                    row.rep,
                    m.best_acc,
                    m.avg_acc,
                    m.wall_s,
                    m.qpu_s,
                    m.makespan_s
                )
                .expect("string write");
            }
            None => {
                writeln!(out, "{},{},{},,,,,", row.solver, row.n, row.rep).expect("string write");
            }
        }
    }
    out
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn write_series(dir: &std::path::Path, rows: &[Row]) -> anyhow::Result<Vec<PathBuf>> {
    let metrics: [(&str, fn(&RowMetrics) -> f64); 5] = [
        ("best_acc", |m| m.best_acc),
        ("avg_acc", |m| m.avg_acc),
        ("wall_clock", |m| m.wall_s),
        ("qpu", |m| m.qpu_s),
        ("makespan", |m| m.makespan_s),
    ];
    let mut groups: Vec<(String, usize)> = rows
        .iter()
        .filter(|r| r.metrics.is_some())
        .map(|r| (r.solver.clone(), r.n))
        .collect();
    groups.sort();
    groups.dedup();

    let mut paths = Vec::new();
    for (name, getter) in metrics {
        let mut out = String::from("solver,n,mean,std\n");
        for (solver, n) in &groups {
            let values: Vec<f64> = rows
                .iter()
                .filter(|r| &r.solver == solver && r.n == *n)
                .filter_map(|r| r.metrics.as_ref().map(getter))
                .collect();
            let (mean, std) = mean_std(&values);
            writeln!(out, "{},{},{:.6},{:.6}", solver, n, mean, std).expect("string write");
        }
        let path = dir.join(format!("series_{name}.csv"));
        std::fs::write(&path, out)?;
        paths.push(path);
    }
    Ok(paths)
}
