use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ulrich(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ulrich"))
        .args(args)
        .env_remove("FIELD")
        .env_remove("SEED")
        .env_remove("FORMAT")
        .env_remove("DEGREE_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn suite_passes_with_exit_zero() {
    let o = ulrich(&["suite", "knorrer", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("result: PASS (8/8 checks)\n"), "{}", stdout(&o));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(ulrich(&["--format", "xml", "suite", "betti"]).status.code(), Some(2));
    assert_eq!(ulrich(&["--field", "15", "suite", "betti"]).status.code(), Some(2));
    assert_eq!(ulrich(&["ulrich", "for-roots", "--roots", "1,2,3"]).status.code(), Some(2));
    assert_eq!(ulrich(&["pencil", "disc", "/nonexistent/pencil.json"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["--seed", "9", "--format", "json", "suite", "ulrich-e2e", "--n", "2"];
    let a = ulrich(&args);
    let b = ulrich(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["seed"], 9);
    assert_eq!(doc["field"], "F_10009");
}

#[test]
fn environment_sets_defaults() {
    let from_env = Command::new(env!("CARGO_BIN_EXE_ulrich"))
        .args(["suite", "ulrich-e2e", "--n", "2"])
        .env("FIELD", "10037")
        .env("SEED", "4")
        .env("FORMAT", "json")
        .output()
        .unwrap();
    let from_flags = ulrich(&["--field", "10037", "--seed", "4", "--format", "json", "suite", "ulrich-e2e", "--n", "2"]);
    assert_eq!(from_env.status.code(), Some(0));
    assert_eq!(from_env.stdout, from_flags.stdout);
}

#[test]
fn exported_candidate_verifies_to_same_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cand.json");
    let o = ulrich(&["--format", "json", "export", "candidate", "--roots", "3,5,7,11,13", "--out", path(&file)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let v = ulrich(&["--format", "json", "ulrich", "verify", path(&file)]);
    assert_eq!(v.status.code(), Some(0));
    let replayed: Value = serde_json::from_slice(&v.stdout).unwrap();
    assert_eq!(replayed, doc["transcript"]);
}

#[test]
fn corrupted_candidate_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cand.json");
    let o = ulrich(&["export", "candidate", "--roots", "3,5,7,11,13", "--out", path(&file)]);
    assert_eq!(o.status.code(), Some(0));

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let entry = &mut doc["candidate"]["a"]["entries"][0];
    let terms = entry.as_array_mut().unwrap();
    terms.push(serde_json::json!([[1, 0, 0, 0, 0], 1, 1]));
    std::fs::write(&file, doc.to_string()).unwrap();
    assert_eq!(ulrich(&["ulrich", "verify", path(&file)]).status.code(), Some(1));
}

#[test]
fn betti_export_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("betti.txt");
    assert!(ulrich(&["export", "betti", "--g", "3", "--out", path(&file)]).status.success());
    assert_eq!(std::fs::read(&file).unwrap(), include_bytes!("golden/betti_g3.txt"));
}
