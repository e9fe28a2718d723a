use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgeworth-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn summary_reports_arctanh_closed_forms() {
    let v = json(&[
        "summary",
        "--n",
        "35",
        "--rho",
        "-0.85",
        "--transform",
        "arctanh",
    ]);
    let c = &v["coefficients"];
    assert!((c["m1"].as_f64().unwrap() + 0.425).abs() < 1e-12);
    assert!((c["v1"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((c["g4coef"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(v["model"], "edgeworth-arctanh");
    assert_eq!(v["config"]["n"], 35);
    assert_eq!(v["config"]["seed"], 20240601);
}

#[test]
fn pdf_writes_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pdf.csv");
    let out = run(&[
        "pdf",
        "--n",
        "20",
        "--rho",
        "0.3",
        "--grid",
        "1001",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,approx_pdf,exact_pdf"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 1001);
    assert!((rows[0][0] + 1.0 - 1e-6).abs() < 1e-15);
    assert!(rows.iter().all(|r| r[2] >= 0.0));
}

#[test]
fn compare_reports_interval() {
    let v = json(&[
        "compare",
        "--n",
        "35",
        "--rho",
        "-0.85",
        "--transform",
        "basic-fisher",
    ]);
    let e = v["max_interval_error"].as_f64().unwrap();
    assert!(e > 0.02 && e < 0.05, "{e}");
    assert!(v["a"].as_f64().unwrap() <= v["b"].as_f64().unwrap());
}

#[test]
fn moment_command_gives_inverse_n_polynomial() {
    // E[X̄²] = 1/n for the first Pearson variable.
    let v = json(&["moment", "--index", "2,0,0,0,0", "--rho", "0.4"]);
    assert_eq!(v["polynomial"]["1"].as_f64(), Some(1.0));
    assert_eq!(v["polynomial"].as_object().unwrap().len(), 1);
}

#[test]
fn mc_is_reproducible() {
    let args = [
        "mc", "--n", "20", "--rho", "0.0", "--reps", "20000", "--seed", "3", "--format", "csv",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["summary", "--rho", "1.5"],
        vec!["summary", "--n", "3"],
        vec!["pdf", "--grid", "10"],
        vec!["moment", "--index", "9,0,0,0,0"],
        vec!["summary", "--transform", "cubic"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn basic_fisher_flags_warn_on_stderr() {
    let out = run(&["summary", "--transform", "basic-fisher", "--no-gamma4"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
