use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shufflealg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim().to_string()
}

fn eval_file(json: &str) -> Output {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    run(&["eval", f.path().to_str().unwrap(), "--format", "text"])
}

#[test]
fn hilbert_tables() {
    let o = run(&["hilbert", "--n-max", "6", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1,1,2,5,14,41,124");
    let o = run(&["hilbert", "--mode", "torsion", "--a", "2", "--b", "1", "--n-max", "2", "--format", "text"]);
    assert_eq!(stdout(&o), "1,1,2");
    let o = run(&["hilbert", "--n-max", "0", "--format", "text"]);
    assert_eq!(stdout(&o), "1");
}

#[test]
fn hilbert_json_and_csv() {
    let o = run(&["hilbert", "--n-max", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mode"], "generic");
    assert_eq!(v["dims"], serde_json::json!([1, 1, 2, 5]));
    let o = run(&["hilbert", "--n-max", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "mode,n,dim\ngeneric,0,1\ngeneric,1,1");
}

#[test]
fn enumeration_bound_is_a_usage_error() {
    assert_eq!(run(&["hilbert", "--n-max", "11"]).status.code(), Some(2));
}

#[test]
fn relations_suite_passes() {
    let o = run(&["verify", "relations", "--range", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["passed"], true);
    assert_eq!(v["summary"]["instances"], 49);
}

#[test]
fn multiplicity_of_the_simplest_subset() {
    let o = run(&["verify", "multiplicity"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["conditions"], 2);
    assert_eq!(v["summary"]["certified"], true);
}

#[test]
fn orphan_subset_exits_one_with_a_report() {
    let o = run(&["verify", "multiplicity", "--subset", "[[0,0],[1,1]]"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn bijection_round_trips() {
    let o = run(&["verify", "bijection", "--n", "6"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["round_trips"], 132);
}

#[test]
fn torsion_suite_needs_torsion_mode() {
    assert_eq!(run(&["verify", "torsion"]).status.code(), Some(2));
    assert!(run(&["verify", "torsion", "--mode", "torsion", "--n-max", "4", "--samples", "5"]).status.success());
}

#[test]
fn eval_expressions() {
    let o = eval_file(r#"{"word": "0,0", "point": [1, 2]}"#);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "15/2");
    let o = eval_file(r#"{"summand": 1, "point": [1, 2, 3, 6]}"#);
    assert_eq!(stdout(&o), "0");
    let o = eval_file(r#"{"element": "S_1: z1^2", "point": ["1/2"]}"#);
    assert_eq!(stdout(&o), "1/4");
}

#[test]
fn eval_errors_and_exit_codes() {
    let o = eval_file(r#"{"word": "0,0", "point": [1, 1]}"#);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("coincide"));
    assert_eq!(eval_file(r#"{"word": "0,0", "element": "S_1: 1"}"#).status.code(), Some(2));
    assert_eq!(eval_file("not json").status.code(), Some(2));
    assert_eq!(run(&["--q1", "1/0", "hilbert"]).status.code(), Some(2));
    assert_eq!(run(&["--q1", "x", "hilbert"]).status.code(), Some(2));
}

#[test]
fn seeded_runs_are_reproducible() {
    for suite in ["associativity", "zero-locus"] {
        let a = run(&["verify", suite, "--seed", "7", "--samples", "5"]);
        let b = run(&["verify", suite, "--seed", "7", "--samples", "5"]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}
