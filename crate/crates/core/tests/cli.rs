use std::process::{Command, Output};

fn goodpoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goodpoint"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn count_points_prints_the_count() {
    let o = goodpoint(&["count-points", "--a", "3", "--b", "0", "--q", "25"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "20");
}

#[test]
fn singular_curve_is_an_input_error() {
    let o = goodpoint(&["count-points", "--a", "0", "--b", "0", "--q", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn split_prime_reports_norm_and_trace() {
    let o = goodpoint(&["split-prime", "--d", "-3", "--p", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("norm 7"));
    let inert = goodpoint(&["split-prime", "--d", "-3", "--p", "5", "--trace", "1"]);
    assert_eq!(inert.status.code(), Some(2));
}

#[test]
fn torsion_lists_seven_points() {
    let o = goodpoint(&["torsion", "--n", "0", "--precision", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("y^2 = x^3 - 2 over Q_7"));
    assert_eq!(out.lines().filter(|l| l.starts_with('T')).count(), 7);
}

#[test]
fn certify_emits_json() {
    let o = goodpoint(&["certify", "--n", "1", "--x", "-1", "--y", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"], "Good");
    assert_eq!(v["x_valuation"], -2);
}

#[test]
fn certify_rejects_bad_points() {
    for args in [
        ["certify", "--n", "0", "--x", "1", "--y", "1"],
        ["certify", "--n", "0", "--x", "a/b", "--y", "1"],
    ] {
        assert_eq!(goodpoint(&args).status.code(), Some(2), "{args:?}");
    }
    let o = goodpoint(&[
        "certify",
        "--n",
        "0",
        "--x",
        "3",
        "--y",
        "5",
        "--precision",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = goodpoint(&[
        "sweep",
        "--from",
        "-3",
        "--to",
        "3",
        "--height",
        "50",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("good fraction"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 7);
    assert_eq!(v["per_generator_verdicts"], true);
}

#[test]
fn sweep_rejects_malformed_dataset() {
    let dir = tempfile::tempdir().unwrap();
    let ds = dir.path().join("g.jsonl");
    std::fs::write(&ds, "{\"n\": 0,").unwrap();
    let o = goodpoint(&[
        "sweep",
        "--from",
        "0",
        "--to",
        "0",
        "--dataset",
        ds.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let empty = goodpoint(&["sweep", "--from", "1", "--to", "0"]);
    assert_eq!(empty.status.code(), Some(2));
}

#[test]
fn filtration_reports_levels() {
    let o = goodpoint(&[
        "filtration",
        "--n",
        "0",
        "--x",
        "3",
        "--y",
        "5",
        "--precision",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("level(A_v) over Q_7(zeta_7) = 1"));
    assert!(out.contains("restricted level over Q_7(zeta_7) = 6"));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(goodpoint(&["frobnicate"]).status.code(), Some(2));
}
