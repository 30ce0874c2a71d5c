use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use baselines::brute_force;
use bench_cli::{report_summary, run_experiment, ExperimentSpec};
use exec_scheduler::Executor;
use genome_assembly::{
    compute_overlaps, decode_path, encode_edge_qubo, encode_permutation_qubo, graph_to_csv,
    merge_sequence, parse_fasta, synthesize_reads, write_fasta,
};
use hadof_engine::{hadof_solve, HadofConfig, HadofMode};
use qubo_core::{random_qubo, QuboProblem};
use rand::{Rng, SeedableRng};

/// Exit codes: 0 success, 2 spec error, 3 solver failure.
const EXIT_SPEC: u8 = 2;
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(
    name = "bench-cli",
    version,
    about = "QUBO decomposition benchmark driver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem with one solver and write the report JSON.
    Solve(SolveArgs),
    /// Run an experiment spec file (sweeps, repetitions, CSV/series output).
    Bench(BenchArgs),
    /// Assemble a FASTA read set into one sequence via the overlap-graph QUBO.
    Assemble(AssembleArgs),
    /// Generate inputs: random QUBO files or synthetic read sets.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Summarise a results CSV.
    Report(ReportArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// QUBO JSON file (alternative to --random-n).
    #[arg(long, conflicts_with = "random_n")]
    qubo: Option<PathBuf>,
    /// Generate a random instance of this size instead of loading a file.
    #[arg(long)]
    random_n: Option<usize>,
    #[arg(long, default_value_t = -10.0)]
    lo: f64,
    #[arg(long, default_value_t = 10.0)]
    hi: f64,
    /// Seed for the random instance.
    #[arg(long, default_value_t = 0)]
    problem_seed: u64,
    /// hadof-sequential | hadof-parallel | full-qaoa | sa | brute
    #[arg(long, default_value = "hadof-sequential")]
    solver: String,
    /// Solver seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    k: usize,
    #[arg(long, default_value_t = 5)]
    p: usize,
    #[arg(long, default_value_t = 500)]
    shots_expectation: usize,
    #[arg(long, default_value_t = 5000)]
    shots_final: usize,
    #[arg(long, default_value_t = 0.0)]
    readout_flip: f64,
    #[arg(long, default_value_t = 1.0)]
    schedule_scale: f64,
    #[arg(long, default_value_t = 8)]
    workers: usize,
    /// Report JSON destination (stdout summary only when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Experiment spec JSON.
    #[arg(long)]
    spec: PathBuf,
    /// Master seed (mandatory; overrides any seed in the spec).
    #[arg(long)]
    seed: u64,
    /// Override the spec's output directory.
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

#[derive(Args)]
struct AssembleArgs {
    /// Input reads (FASTA).
    #[arg(long)]
    fasta: PathBuf,
    /// Assembled output (FASTA).
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 3)]
    min_overlap: usize,
    #[arg(long, default_value_t = 1.0)]
    penalty: f64,
    /// edge | permutation
    #[arg(long, default_value = "edge")]
    encoding: String,
    /// hadof-sequential | hadof-parallel | brute
    #[arg(long, default_value = "hadof-parallel")]
    solver: String,
    /// Drop overlap edges implied by two-edge detours before encoding.
    #[arg(long)]
    transitive_reduction: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    workers: usize,
    /// Optional overlap-graph edge-list export.
    #[arg(long)]
    graph_csv: Option<PathBuf>,
    /// Optional encoded-QUBO export.
    #[arg(long)]
    qubo_json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random dense QUBO to a JSON file.
    Qubo {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = -10.0)]
        lo: f64,
        #[arg(long, default_value_t = 10.0)]
        hi: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Synthetic error-free reads from a random genome to a FASTA file.
    Reads {
        #[arg(long, default_value_t = 600)]
        genome_length: usize,
        #[arg(long, default_value_t = 100)]
        read_length: usize,
        #[arg(long, default_value_t = 50)]
        stride: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Shuffle read order (reads stay identical as a multiset).
        #[arg(long)]
        shuffle: bool,
        #[arg(long)]
        out: PathBuf,
        /// Also write the reference genome FASTA here.
        #[arg(long)]
        genome_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    csv: PathBuf,
}

enum CliError {
    Spec(String),
    Solver(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Spec(_) => EXIT_SPEC,
            CliError::Solver(_) => EXIT_SOLVER,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Spec(m) | CliError::Solver(m) => m,
        }
    }
}

fn spec_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Spec(e.to_string())
}

fn solver_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Solver(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Assemble(args) => cmd_assemble(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Report(args) => cmd_report(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

fn load_problem(args: &SolveArgs) -> Result<QuboProblem, CliError> {
    match (&args.qubo, args.random_n) {
        (Some(path), _) => qubo_core::io::load(path).map_err(spec_err),
        (None, Some(n)) => random_qubo(n, args.lo, args.hi, args.problem_seed).map_err(spec_err),
        (None, None) => Err(CliError::Spec("need --qubo or --random-n".into())),
    }
}

fn cmd_solve(args: SolveArgs) -> Result<(), CliError> {
    let problem = load_problem(&args)?;
    let config = HadofConfig {
        k: args.k,
        p: args.p,
        shots_expectation: args.shots_expectation,
        shots_final: args.shots_final,
        readout_flip: args.readout_flip,
        schedule_scale: args.schedule_scale,
        seed: args.seed,
        ..Default::default()
    };
    config.validate().map_err(spec_err)?;

    let report = match args.solver.as_str() {
        "hadof-sequential" => hadof_solve(
            &problem,
            &config.clone().with_mode(HadofMode::Sequential),
            &Executor::sequential_local(),
        )
        .map_err(solver_err)?,
        "hadof-parallel" => hadof_solve(
            &problem,
            &config.clone().with_mode(HadofMode::Parallel),
            &Executor::parallel_local(4, args.workers),
        )
        .map_err(solver_err)?,
        "full-qaoa" => hadof_engine::full_qaoa_solve(&problem, &config).map_err(solver_err)?,
        "sa" => {
            let result = baselines::simulated_annealing(
                &problem,
                &baselines::SaConfig {
                    seed: args.seed,
                    ..Default::default()
                },
            );
            println!(
                "sa: best objective {:.6} over {} reads",
                result.best_objective,
                result.read_objectives.len()
            );
            return Ok(());
        }
        "brute" => {
            let (x, v) = brute_force(&problem).map_err(solver_err)?;
            println!("brute: optimum {v:.6} at {x}");
            return Ok(());
        }
        other => return Err(CliError::Spec(format!("unknown solver '{other}'"))),
    };

    println!(
        "{}: best objective {:.6}, {} jobs, wall {:.3}s, modelled qpu {:.1}s",
        args.solver,
        report.best_objective,
        report.jobs_executed,
        report.wall_clock_s,
        report.modelled_qpu_s
    );
    if let Some(out) = args.out {
        std::fs::write(&out, report.to_json()).map_err(spec_err)?;
        println!("report written to {}", out.display());
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.spec).map_err(spec_err)?;
    let mut spec: ExperimentSpec = serde_json::from_str(&text).map_err(spec_err)?;
    spec.seed = Some(args.seed);
    if let Some(dir) = args.output_dir {
        spec.output_dir = dir;
    }
    spec.validate().map_err(CliError::Spec)?;
    let artifacts = run_experiment(&spec).map_err(solver_err)?;
    println!(
        "wrote {} and {} run files",
        artifacts.csv_path.display(),
        artifacts.run_json_paths.len()
    );
    if artifacts.failures > 0 {
        return Err(CliError::Solver(format!(
            "{} solver cells failed (recorded in the CSV)",
            artifacts.failures
        )));
    }
    Ok(())
}

fn cmd_assemble(args: AssembleArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.fasta).map_err(spec_err)?;
    let reads = parse_fasta(&text).map_err(spec_err)?;
    let mut graph = compute_overlaps(&reads, args.min_overlap);
    if args.transitive_reduction {
        graph = graph.transitive_reduction();
    }
    let (qubo, ctx) = match args.encoding.as_str() {
        "edge" => encode_edge_qubo(&graph, args.penalty).map_err(spec_err)?,
        "permutation" => encode_permutation_qubo(&graph, args.penalty).map_err(spec_err)?,
        other => return Err(CliError::Spec(format!("unknown encoding '{other}'"))),
    };
    eprintln!(
        "overlap graph: {} reads, {} edges, acyclic: {}; {} binary variables",
        reads.len(),
        graph.n_edges(),
        graph.is_acyclic(),
        qubo.n()
    );
    if let Some(path) = &args.graph_csv {
        std::fs::write(path, graph_to_csv(&graph, &reads)).map_err(spec_err)?;
    }
    if let Some(path) = &args.qubo_json {
        qubo_core::io::save(&qubo, path).map_err(spec_err)?;
    }

    let config = HadofConfig {
        seed: args.seed,
        ..Default::default()
    };
    let best = match args.solver.as_str() {
        "brute" => brute_force(&qubo).map_err(solver_err)?.0,
        "hadof-sequential" => {
            hadof_solve(
                &qubo,
                &config.clone().with_mode(HadofMode::Sequential),
                &Executor::sequential_local(),
            )
            .map_err(solver_err)?
            .best_assignment
        }
        "hadof-parallel" => {
            hadof_solve(
                &qubo,
                &config.clone().with_mode(HadofMode::Parallel),
                &Executor::parallel_local(4, args.workers),
            )
            .map_err(solver_err)?
            .best_assignment
        }
        other => return Err(CliError::Spec(format!("unknown solver '{other}'"))),
    };

    let path = decode_path(&best, &ctx).map_err(solver_err)?;
    if !path.valid {
        return Err(CliError::Solver(format!(
            "best sample is not a valid path: {}",
            path.diagnostic.unwrap_or_default()
        )));
    }
    let sequence = merge_sequence(&path, &reads, &graph).map_err(solver_err)?;
    std::fs::write(&args.out, write_fasta([("assembled", sequence.as_str())])).map_err(spec_err)?;
    println!(
        "assembled {} reads into {} bases -> {}",
        path.order.len(),
        sequence.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_gen(args: GenCommand) -> Result<(), CliError> {
    match args {
        GenCommand::Qubo {
            n,
            lo,
            hi,
            seed,
            out,
        } => {
            let problem = random_qubo(n, lo, hi, seed).map_err(spec_err)?;
            qubo_core::io::save(&problem, &out).map_err(spec_err)?;
            println!("wrote {} ({} terms)", out.display(), problem.num_terms());
        }
        GenCommand::Reads {
            genome_length,
            read_length,
            stride,
            seed,
            shuffle,
            out,
            genome_out,
        } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let genome: String = (0..genome_length)
                .map(|_| ['A', 'C', 'G', 'T'][rng.random_range(0..4)])
                .collect();
            let reads = synthesize_reads(
                &genome,
                read_length,
                stride,
                shuffle.then_some(seed.wrapping_add(1)),
            )
            .map_err(spec_err)?;
            let records: Vec<(&str, &str)> = reads
                .iter()
                .map(|r| (r.id.as_str(), r.seq.as_str()))
                .collect();
            std::fs::write(&out, write_fasta(records)).map_err(spec_err)?;
            if let Some(genome_path) = genome_out {
                std::fs::write(&genome_path, write_fasta([("genome", genome.as_str())]))
                    .map_err(spec_err)?;
            }
            println!("wrote {} reads to {}", reads.len(), out.display());
        }
    }
    Ok(())
}

fn cmd_report(args: ReportArgs) -> Result<(), CliError> {
    let (_, table) = report_summary(&args.csv).map_err(spec_err)?;
    print!("{table}");
    Ok(())
}
