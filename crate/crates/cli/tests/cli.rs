//! End-to-end checks of the binary: exit codes, output shapes, and replay
//! fidelity, driven through real process invocations.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semihilbert"))
}

/// Renders a real 2x2 matrix as the JSON the CLI reads.
fn matrix_json(rows: [[f64; 2]; 2]) -> Value {
    json!({
        "dim": 2,
        "entries": rows
            .iter()
            .map(|row| row.iter().map(|&x| [x, 0.0]).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn write_pair(path: &Path, a: [[f64; 2]; 2], s: [[f64; 2]; 2]) {
    let body = json!({"A": matrix_json(a), "S": matrix_json(s)});
    fs::write(path, serde_json::to_string(&body).unwrap()).unwrap();
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is one JSON document")
}

#[test]
fn compute_reports_the_identity_pair_radii() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("identity.json");
    write_pair(&pair, [[1.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [0.0, 1.0]]);

    let output = bin().arg("compute").arg(&pair).output().unwrap();
    assert!(output.status.success());
    let doc = stdout_json(&output);
    let dw = doc["dw"]["value"].as_f64().unwrap();
    assert!((dw - 2.0f64.sqrt()).abs() < 1e-9, "dw = {dw}");
    assert!(doc["dw"]["converged"].as_bool().unwrap());
    assert_eq!(doc["adjoint"]["dim"], 2);
    assert_eq!(doc["pair"], "identity");
}

#[test]
fn malformed_input_exits_with_the_parse_code() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("broken.json");
    fs::write(&pair, "{\"A\": nonsense").unwrap();

    let output = bin().arg("compute").arg(&pair).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(!output.stderr.is_empty());
}

#[test]
fn kernel_escaping_operator_exits_with_the_domain_code() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("escape.json");
    // The weight kills e2, but S maps e2 onto e1: no weighted adjoint.
    write_pair(&pair, [[1.0, 0.0], [0.0, 0.0]], [[0.0, 1.0], [0.0, 0.0]]);

    let output = bin().arg("compute").arg(&pair).output().unwrap();
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn indefinite_weight_exits_with_the_domain_code() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("indefinite.json");
    write_pair(&pair, [[1.0, 0.0], [0.0, -1.0]], [[1.0, 0.0], [0.0, 1.0]]);

    let output = bin().arg("compute").arg(&pair).output().unwrap();
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn reproduce_confirms_every_reference_row() {
    let output = bin().arg("reproduce").output().unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "remark_id,paper_bound_value,our_bound_value,dw_lower,verdict"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().any(|r| r.starts_with("re11,")));
    assert!(!text.contains("mismatch"));
    assert!(text.contains("improvement-confirmed"));
}

#[test]
fn same_seed_fuzz_runs_write_identical_corpora() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let second = dir.path().join("second.csv");
    for out in [&first, &second] {
        let output = bin()
            .args(["fuzz", "--count", "4", "--dims", "2", "--seed", "11", "--out"])
            .arg(out)
            .output()
            .unwrap();
        assert!(output.status.success());
        let doc = stdout_json(&output);
        assert!(doc["ok"].as_bool().unwrap());
    }
    let a = fs::read(&first).unwrap();
    let b = fs::read(&second).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "same-seed corpora must be byte-identical");
}

#[test]
fn fuzz_rejects_an_empty_corpus_request() {
    let output = bin().args(["fuzz", "--count", "0"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn bounds_writes_rows_for_every_evaluated_bound() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("diagonal.json");
    write_pair(&pair, [[1.0, 0.0], [0.0, 2.0]], [[1.0, 0.0], [0.0, 2.0]]);
    let out = dir.path().join("bounds.csv");

    let output = bin()
        .arg("bounds")
        .arg(&pair)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success());
    let doc = stdout_json(&output);
    assert_eq!(doc["violations"], 0);

    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "pair_id,bound_id,kind,params,value,dw_lower,dw_cap,holds,slack"
    );
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() > 20, "expected a full bound sweep, got {}", rows.len());
    assert!(rows.iter().all(|r| r.starts_with("diagonal,")));
}

#[test]
fn verify_passes_on_a_commuting_pair() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("diagonal.json");
    write_pair(&pair, [[1.0, 0.0], [0.0, 2.0]], [[1.0, 0.0], [0.0, 2.0]]);

    let output = bin().arg("verify").arg(&pair).output().unwrap();
    assert!(output.status.success());
    let doc = stdout_json(&output);
    assert!(doc["ok"].as_bool().unwrap());
    assert_eq!(doc["checks"].as_array().unwrap().len(), 5);
}

#[test]
fn config_file_typos_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("identity.json");
    write_pair(&pair, [[1.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [0.0, 1.0]]);
    let config = dir.path().join("config.json");
    fs::write(&config, r#"{"optimizer": {"restart": 4}}"#).unwrap();

    let output = bin()
        .arg("compute")
        .arg(&pair)
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(err.contains("unknown field"), "stderr: {err}");
}
