use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinor-forge")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_pure_on_catalog_spinor() {
    let o = run(&["verify", "pure", "--catalog", "spin7_pure"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("is_pure: true"));
}

#[test]
fn verify_fails_with_exit_one() {
    // the generic reducing spinor is not pure
    let o = run(&["verify", "pure", "--catalog", "generic:4"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["verify", "reducing", "--catalog", "generic:4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["is_reducing"], Value::Bool(true));
}

#[test]
fn eta_single_pair_text() {
    let o = run(&["eta", "--catalog", "spin7_reducing", "--pair", "1,2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "e1^e2");
}

#[test]
fn zero_spinor_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.json");
    std::fs::write(&path, r#"{"n":4,"r":3,"m":1,"scale2":"1","coeffs":[]}"#).unwrap();
    let o = run(&["verify", "pure", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ZeroSpinor"));
}

#[test]
fn emitted_catalog_entry_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("qk2.json");
    let o = run(&["catalog", "emit", "--name", "qk", "--m", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let from_file = run(&["eta", "--in", path.to_str().unwrap(), "--format", "json"]);
    let from_catalog = run(&["eta", "--catalog", "qk:2", "--format", "json"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&from_catalog));
    let o = run(&["verify", "pure", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn untwisted_input_goes_through_spinc_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi.json");
    std::fs::write(&path, stdout(&run(&["catalog", "emit", "--name", "spinc", "--n", "3"]))).unwrap();
    let o = run(&["verify", "spinc", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("form: - e1^e2 - e3^e4 - e5^e6"));
}

#[test]
fn commutant_and_annihilator_dimensions() {
    let o = run(&["commutant", "--catalog", "qk:1", "--skew", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 3);
    let o = run(&["annihilator", "--catalog", "spin7_reducing", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 21);
}

#[test]
fn frame_test_is_seeded() {
    let args = ["frame-test", "--catalog", "qk:1", "--seed", "9", "--trials", "4", "--format", "json"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&run(&args)));
}

#[test]
fn bad_pair_and_missing_source() {
    assert_eq!(run(&["eta", "--catalog", "qk:1", "--pair", "12"]).status.code(), Some(2));
    assert_eq!(run(&["eta", "--catalog", "qk:1", "--pair", "1,9"]).status.code(), Some(2));
    assert_ne!(run(&["eta"]).status.code(), Some(0));
}

#[test]
fn report_json_schema() {
    let o = run(&["report", "--json"]);
    let rows: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 12);
    for row in &rows {
        for key in ["name", "expected", "computed", "pass"] {
            assert!(row.get(key).is_some(), "{row}");
        }
    }
    let all_pass = rows.iter().all(|r| r["pass"] == Value::Bool(true));
    assert_eq!(o.status.code(), Some(if all_pass { 0 } else { 1 }));
}
