//! End-to-end tests of the binary: exit codes, file outputs and the golden
//! results CSV.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bench-cli"))
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn golden_spec(dir: &Path) -> std::path::PathBuf {
    let spec = serde_json::json!({
        "problem": {"random": {"n": 8, "lo": -10.0, "hi": 10.0, "seed": 3}},
        "solvers": ["brute", "sa", "hadof-sequential"],
        "repetitions": 2,
        "output_dir": dir.join("out"),
        "deterministic_timing": true,
        "hadof": {"k": 4, "shots_final": 200}
    });
    let path = dir.join("spec.json");
    std::fs::write(&path, serde_json::to_string_pretty(&spec).unwrap()).unwrap();
    path
}

#[test]
fn bench_reproduces_the_golden_csv_byte_for_byte() {
    let dir_a = TempDir::new().unwrap();
    let dir_b = TempDir::new().unwrap();
    for dir in [&dir_a, &dir_b] {
        let spec = golden_spec(dir.path());
        let out = run(bin().args(["bench", "--spec", spec.to_str().unwrap(), "--seed", "7"]));
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read(dir_a.path().join("out/results.csv")).unwrap();
    let b = std::fs::read(dir_b.path().join("out/results.csv")).unwrap();
    assert_eq!(a, b, "two runs of the same spec must be byte-identical");

    let golden = include_str!("fixtures/golden_results.csv");
    assert_eq!(
        String::from_utf8(a).unwrap(),
        golden,
        "results.csv deviates from the frozen golden file"
    );
}

#[test]
fn concurrent_repetitions_reproduce_the_sequential_csv() {
    let dir = TempDir::new().unwrap();
    let spec = serde_json::json!({
        "problem": {"random": {"n": 8, "lo": -10.0, "hi": 10.0, "seed": 3}},
        "solvers": ["brute", "sa", "hadof-sequential"],
        "repetitions": 2,
        "output_dir": dir.path().join("out"),
        "deterministic_timing": true,
        "concurrent_reps": true,
        "hadof": {"k": 4, "shots_final": 200}
    });
    let path = dir.path().join("spec.json");
    std::fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();
    let out = run(bin().args(["bench", "--spec", path.to_str().unwrap(), "--seed", "7"]));
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // cell seeds are position-derived, so concurrency changes nothing
    let csv = std::fs::read_to_string(dir.path().join("out/results.csv")).unwrap();
    assert_eq!(csv, include_str!("fixtures/golden_results.csv"));
}

#[test]
fn aggregate_means_match_per_run_json() {
    let dir = TempDir::new().unwrap();
    let spec = golden_spec(dir.path());
    let out = run(bin().args(["bench", "--spec", spec.to_str().unwrap(), "--seed", "7"]));
    assert!(out.status.success());

    // recompute the sa mean best accuracy from the per-run JSON files
    let mut best_accs = Vec::new();
    for rep in 0..2 {
        let path = dir.path().join(format!("out/runs/sa_n8_rep{rep}.json"));
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        best_accs.push(v["best_acc"].as_f64().unwrap());
    }
    let expected = best_accs.iter().sum::<f64>() / best_accs.len() as f64;

    let series = std::fs::read_to_string(dir.path().join("out/series_best_acc.csv")).unwrap();
    let sa_line = series
        .lines()
        .find(|l| l.starts_with("sa,"))
        .expect("sa series row");
    let mean: f64 = sa_line.split(',').nth(2).unwrap().parse().unwrap();
    assert!(
        (mean - expected).abs() < 5e-7,
        "series {mean} vs runs {expected}"
    );
}

#[test]
fn bad_spec_exits_with_code_two() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"problem\": {}}").unwrap();
    let out = run(bin().args(["bench", "--spec", path.to_str().unwrap(), "--seed", "1"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solver_failure_exits_with_code_three_and_keeps_the_csv() {
    let dir = TempDir::new().unwrap();
    let spec = serde_json::json!({
        // full-qaoa cannot simulate 30 variables; the row must record the
        // failure while sa still succeeds
        "problem": {"random": {"n": 30, "lo": -10.0, "hi": 10.0, "seed": 3}},
        "solvers": ["full-qaoa", "sa"],
        "output_dir": dir.path().join("out"),
        "deterministic_timing": true
    });
    let path = dir.path().join("spec.json");
    std::fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();
    let out = run(bin().args(["bench", "--spec", path.to_str().unwrap(), "--seed", "1"]));
    assert_eq!(out.status.code(), Some(3));
    let csv = std::fs::read_to_string(dir.path().join("out/results.csv")).unwrap();
    assert!(csv.lines().any(|l| l.starts_with("full-qaoa,30,0,,")));
    assert!(csv
        .lines()
        .any(|l| l.starts_with("sa,30,0,") && !l.contains(",,")));
}

#[test]
fn gen_assemble_round_trip_recovers_the_genome() {
    let dir = TempDir::new().unwrap();
    let reads = dir.path().join("reads.fa");
    let genome = dir.path().join("genome.fa");
    let out = run(bin().args([
        "gen",
        "reads",
        "--genome-length",
        "600",
        "--read-length",
        "100",
        "--stride",
        "50",
        "--seed",
        "11",
        "--out",
        reads.to_str().unwrap(),
        "--genome-out",
        genome.to_str().unwrap(),
    ]));
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let assembled = dir.path().join("assembled.fa");
    let graph_csv = dir.path().join("graph.csv");
    let out = run(bin().args([
        "assemble",
        "--fasta",
        reads.to_str().unwrap(),
        "--out",
        assembled.to_str().unwrap(),
        "--min-overlap",
        "10",
        "--solver",
        "hadof-parallel",
        "--graph-csv",
        graph_csv.to_str().unwrap(),
    ]));
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let strip = |text: &str| {
        text.lines()
            .filter(|l| !l.starts_with('>'))
            .collect::<String>()
    };
    let genome_seq = strip(&std::fs::read_to_string(&genome).unwrap());
    let assembled_seq = strip(&std::fs::read_to_string(&assembled).unwrap());
    assert_eq!(assembled_seq, genome_seq);

    let graph = std::fs::read_to_string(&graph_csv).unwrap();
    assert!(graph.starts_with("tail,head,weight\n"));
    assert_eq!(graph.lines().count(), 11); // header + 10 chain edges
}

#[test]
fn solve_and_report_round_trip() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.json");
    let out = run(bin().args([
        "solve",
        "--random-n",
        "10",
        "--problem-seed",
        "4",
        "--solver",
        "hadof-parallel",
        "--shots-final",
        "500",
        "--seed",
        "2",
        "--out",
        report.to_str().unwrap(),
    ]));
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["n"], 10);
    assert_eq!(v["sample_objectives"].as_array().unwrap().len(), 500);

    // summarise a real results csv
    let spec = golden_spec(dir.path());
    run(bin().args(["bench", "--spec", spec.to_str().unwrap(), "--seed", "7"]));
    let csv = dir.path().join("out/results.csv");
    let out = run(bin().args(["report", "--csv", csv.to_str().unwrap()]));
    assert!(out.status.success());
    let table = String::from_utf8_lossy(&out.stdout);
    assert!(table.contains("sa-reference"));
    assert!(table.contains("hadof-sequential"));
}

#[test]
fn gen_qubo_writes_loadable_files() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("q.json");
    let out = run(bin().args([
        "gen",
        "qubo",
        "--n",
        "12",
        "--seed",
        "9",
        "--out",
        path.to_str().unwrap(),
    ]));
    assert!(out.status.success());
    let problem = qubo_core::io::load(&path).unwrap();
    assert_eq!(problem.n(), 12);
    assert_eq!(problem.num_terms(), 78);

    let out = run(bin().args([
        "solve",
        "--qubo",
        path.to_str().unwrap(),
        "--solver",
        "brute",
    ]));
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("optimum"));
}
