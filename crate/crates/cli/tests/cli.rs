//! End-to-end tests of the binary: output formats, determinism,
//! manifest replay and error reporting.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stable-ecf"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn assert_success(out: &Output) {
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn simulate_is_deterministic_and_round_trip_parseable() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["simulate", "--alpha", "1.5", "--n", "100", "--seed", "7", "--out", "a.txt"];
    assert_success(&run_in(dir.path(), &args));
    let first = std::fs::read(dir.path().join("a.txt")).unwrap();

    assert_success(&run_in(
        dir.path(),
        &["simulate", "--alpha", "1.5", "--n", "100", "--seed", "7", "--out", "b.txt"],
    ));
    let second = std::fs::read(dir.path().join("b.txt")).unwrap();
    assert_eq!(first, second, "same seed must give byte-identical files");

    assert_success(&run_in(
        dir.path(),
        &["simulate", "--alpha", "1.5", "--n", "100", "--seed", "8", "--out", "c.txt"],
    ));
    assert_ne!(first, std::fs::read(dir.path().join("c.txt")).unwrap());

    // Values parse back to the exact binary doubles (shortest round-trip
    // formatting), and the manifest sits alongside.
    let text = String::from_utf8(first).unwrap();
    let values: Vec<f64> = text.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 100);
    let reformatted: String = values.iter().map(|v| format!("{v}\n")).collect();
    assert_eq!(text, reformatted);
    assert!(dir.path().join("a.txt.manifest.json").exists());
}

#[test]
fn simulate_rejects_bad_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["simulate", "--alpha", "0", "--n", "5", "--out", "x.txt"]);
    assert!(!out.status.success());
    assert!(
        stderr_of(&out).contains("alpha must be in (0, 2]"),
        "stderr: {}",
        stderr_of(&out)
    );

    let out = run_in(
        dir.path(),
        &["simulate", "--alpha", "1.5", "--beta", "2", "--n", "5", "--out", "x.txt"],
    );
    assert!(!out.status.success());
    assert!(stderr_of(&out).contains("beta must be in [-1, 1]"));
}

#[test]
fn fit_recovers_cauchy_parameters() {
    let dir = tempfile::tempdir().unwrap();
    assert_success(&run_in(
        dir.path(),
        &["simulate", "--alpha", "1.0", "--n", "100000", "--seed", "11", "--out", "cauchy.txt"],
    ));
    let out = run_in(dir.path(), &["fit", "--input", "cauchy.txt", "--method", "lad"]);
    assert_success(&out);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let alpha = report["alpha_hat"].as_f64().unwrap();
    let sigma = report["sigma_hat"].as_f64().unwrap();
    assert!((alpha - 1.0).abs() < 0.05, "alpha_hat = {alpha}");
    assert!((sigma - 1.0).abs() < 0.05, "sigma_hat = {sigma}");
    assert_eq!(report["method"], "lad");
    assert_eq!(report["grid"].as_array().unwrap().len(), 20);
    assert_eq!(report["input"]["n"], 100000);
    assert!(report["fit"]["converged"].as_bool().unwrap());
    assert_eq!(report["input"]["sha256"].as_str().unwrap().len(), 64);
    assert!(report["standardization"]["scale"].as_f64().unwrap() > 0.0);
}

#[test]
fn fit_methods_and_k_modes() {
    let dir = tempfile::tempdir().unwrap();
    assert_success(&run_in(
        dir.path(),
        &["simulate", "--alpha", "1.3", "--n", "200", "--seed", "3", "--out", "s.txt"],
    ));
    for method in ["lad", "kw", "ls-mid"] {
        let out = run_in(dir.path(), &["fit", "--input", "s.txt", "--method", method]);
        assert_success(&out);
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["method"], method);
    }
    let out = run_in(
        dir.path(),
        &["fit", "--input", "s.txt", "--method", "koutrouvelis", "--k-mode", "oracle:1.3"],
    );
    assert_success(&out);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["options"]["k_resolved"], 22, "optimal K at (1.3, n = 200)");

    // k-mode outside the koutrouvelis method is rejected.
    let out = run_in(dir.path(), &["fit", "--input", "s.txt", "--method", "lad", "--k-mode", "fixed:5"]);
    assert!(!out.status.success());
}

#[test]
fn fit_reports_parse_errors_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.txt"), "1.0\n2.0\nabc\n4.0\n").unwrap();
    let out = run_in(dir.path(), &["fit", "--input", "bad.txt", "--method", "lad"]);
    assert!(!out.status.success());
    assert!(stderr_of(&out).contains("line 3"), "stderr: {}", stderr_of(&out));

    std::fs::write(dir.path().join("small.txt"), "1\n2\n3\n4\n5\n").unwrap();
    let out = run_in(dir.path(), &["fit", "--input", "small.txt", "--method", "lad"]);
    assert!(!out.status.success());
    assert!(stderr_of(&out).contains("at least 10"), "stderr: {}", stderr_of(&out));

    let out = run_in(dir.path(), &["fit", "--input", "missing.txt", "--method", "lad"]);
    assert!(!out.status.success());
}

#[test]
fn fit_rejects_constant_samples_naming_the_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("flat.txt"), "5.0\n".repeat(20)).unwrap();
    let out = run_in(dir.path(), &["fit", "--input", "flat.txt", "--method", "lad"]);
    assert!(!out.status.success());
    // Standardization fails first on a constant sample: zero spread.
    assert!(stderr_of(&out).contains("spread"), "stderr: {}", stderr_of(&out));
}

#[test]
fn benchmark_csv_shape_determinism_and_manifest_replay() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "benchmark",
        "--alphas",
        "1.5,1.1",
        "--n",
        "60",
        "-M",
        "40",
        "--methods",
        "lad,kw",
        "--seed",
        "42",
        "--out",
        "r1.csv",
    ];
    assert_success(&run_in(dir.path(), &args));
    let first = std::fs::read(dir.path().join("r1.csv")).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "method,target,alpha_true,beta,n,M,mean,bias,mse,failures");
    assert_eq!(lines.len(), 1 + 2 * 2 * 2, "2 alphas x 2 methods x 2 targets");

    // Byte-identical on reruns and across thread counts.
    let mut rerun = args;
    rerun[rerun.len() - 1] = "r2.csv";
    assert_success(&run_in(dir.path(), &rerun));
    assert_eq!(first, std::fs::read(dir.path().join("r2.csv")).unwrap());

    let mut threaded: Vec<&str> = args.to_vec();
    let last = threaded.len() - 1;
    threaded[last] = "r3.csv";
    threaded.extend(["--threads", "1"]);
    assert_success(&run_in(dir.path(), &threaded));
    assert_eq!(first, std::fs::read(dir.path().join("r3.csv")).unwrap());

    // Replaying the manifest's argv reproduces the bytes.
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("r1.csv.manifest.json")).unwrap())
            .unwrap();
    let argv: Vec<String> = manifest["argv"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let replay: Vec<&str> = argv.iter().map(String::as_str).collect();
    assert_success(&run_in(dir.path(), &replay));
    assert_eq!(first, std::fs::read(dir.path().join("r1.csv")).unwrap());
}

#[test]
fn benchmark_config_file_with_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("b.conf"),
        "# comparison config\nalphas = 1.5\nn = 50\nreplications = 30\nmethods = lad\nseed = 9\n",
    )
    .unwrap();
    assert_success(&run_in(
        dir.path(),
        &["benchmark", "--config", "b.conf", "-M", "10", "--out", "r.csv"],
    ));
    let text = std::fs::read_to_string(dir.path().join("r.csv")).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("lad,index,1.5,0,50,10,"), "row: {row}");
}

#[test]
fn benchmark_rejects_invalid_configs_listing_violations() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["benchmark", "--alphas", "2.5", "--n", "5", "-M", "0", "--out", "r.csv"],
    );
    assert!(!out.status.success());
    let err = stderr_of(&out);
    assert!(err.contains("alpha must be in (0, 2]"), "stderr: {err}");
    assert!(err.contains("n must be >= 10"), "stderr: {err}");
    assert!(err.contains("replications must be >= 1"), "stderr: {err}");

    let out = run_in(dir.path(), &["benchmark", "--methods", "bogus", "--out", "r.csv"]);
    assert!(!out.status.success());
    assert!(stderr_of(&out).contains("unknown method"));
}

#[test]
fn diagnose_acf_lag_zero_is_single_unit_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "diagnose", "--kind", "acf", "--alpha", "0.9", "--n", "200", "--k", "28",
            "--max-lag", "0", "--seed", "5",
        ],
    );
    assert_success(&out);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "lag\tacf\n0\t1\n");
}

#[test]
fn diagnose_outputs_are_deterministic_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "diagnose", "--kind", "k-sensitivity", "--alpha", "1.3", "--n", "80", "-M", "20",
        "--k-min", "8", "--k-max", "11", "--seed", "6", "--out", "ks.tsv",
    ];
    assert_success(&run_in(dir.path(), &args));
    let first = std::fs::read_to_string(dir.path().join("ks.tsv")).unwrap();
    let lines: Vec<&str> = first.trim_end().lines().collect();
    assert_eq!(lines[0], "K\tmean_alpha_koutrouvelis\tmean_alpha_lad");
    assert_eq!(lines.len(), 1 + 4);
    assert!(lines[1].starts_with("8\t"));

    let mut rerun = args;
    rerun[rerun.len() - 1] = "ks2.tsv";
    assert_success(&run_in(dir.path(), &rerun));
    assert_eq!(first, std::fs::read_to_string(dir.path().join("ks2.tsv")).unwrap());

    let out = run_in(
        dir.path(),
        &[
            "diagnose", "--kind", "residual-variance", "--alpha", "1.5", "--sigma", "0.5",
            "--n", "60", "-M", "30", "--t-count", "6", "--seed", "2",
        ],
    );
    assert_success(&out);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "t\tvariance");
    assert_eq!(lines.len(), 7);
}

#[test]
fn help_lists_all_subcommands() {
    let out = bin().arg("--help").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for sub in ["simulate", "fit", "benchmark", "diagnose"] {
        assert!(text.contains(sub), "help must mention {sub}");
    }
}
