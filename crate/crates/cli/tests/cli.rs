use std::process::{Command, Output};

use serde_json::Value;

fn ehall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ehall")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn failure_cases(report: &Value) -> Vec<String> {
    report["failures"].as_array().unwrap().iter().map(|f| f["case"].as_str().unwrap().to_string()).collect()
}

#[test]
fn normalize_affine_and_hecke() {
    let o = ehall(&["normalize", "t1*x2*t1", "--rank", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "s^2*x1");

    let o = ehall(&["normalize", "t1*t1", "--rank", "2", "--algebra", "hecke"]);
    assert_eq!(stdout(&o).trim(), "s^2 + (s^2 - 1)*t1");

    let o = ehall(&["normalize", "p1*p1 - s[2] - s[1,1]", "--algebra", "sym", "--truncation", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn normalize_json_and_csv() {
    let o = ehall(&["normalize", "x1*x2", "--rank", "2", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["algebra"], "affine{2}");
    assert_eq!(v["normal_form"], "x1*x2");

    let o = ehall(&["normalize", "x1+x2", "--rank", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "algebra,input,normal_form\naffine{2},x1+x2,x1 + x2\n");
}

#[test]
fn parse_errors_exit_two_with_position() {
    let o = ehall(&["normalize", "x1 +* 2", "--rank", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("1:5"), "{err}");
    assert!(err.contains('^'), "{err}");
    assert!(o.stdout.is_empty());

    let o = ehall(&["normalize", "x1^-1", "--rank", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("negative exponent"));

    let o = ehall(&["normalize", "x3", "--rank", "2"]);
    assert_eq!(o.status.code(), Some(2));

    let o = ehall(&["normalize", "x1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--rank"));
}

#[test]
fn hall_bracket_and_trace_reduce() {
    let o = ehall(&["hall-bracket", "w[1,1]", "w[1,0]"]);
    assert_eq!(stdout(&o).trim(), "(s - s^-1)*w[2,1]");

    let o = ehall(&["hall-bracket", "w[1,0]", "w[-1,0]"]);
    assert_eq!(stdout(&o).trim(), "-1");

    let o = ehall(&["trace-reduce", "x1 - x2 - (q-1)/q*x2*t1", "--rank", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["representative"], "0");
    assert_eq!(v["quotient_dim"], 2);
}

#[test]
fn dims_csv() {
    let o = ehall(&["dims", "--rank", "2", "--degree", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,d,ambient,computed,expected,matches");
    assert_eq!(lines.len(), 7);
    assert!(lines.contains(&"2,2,6,3,3,true"));
}

#[test]
fn dims_respects_ambient_cap() {
    let o = ehall(&["dims", "--rank", "3", "--degree", "4", "--max-ambient-dim", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fock_matrix_json() {
    let o = ehall(&["fock-matrix", "1", "0", "--truncation", "2", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["shift"], 1);
    let blocks = v["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 2);
    assert_eq!(blocks[1]["entries"], serde_json::json!([["1"], ["1"]]));

    let o = ehall(&["fock-matrix", "0", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passing_suites() {
    for suite in ["scalars", "trace-dims", "hall-jacobi", "fock-relations", "fock-jm", "newton"] {
        let o = ehall(&["verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        let v = json(&o);
        assert_eq!(v["suite"], suite);
        assert!(v["cases"].as_u64().unwrap() > 0);
        assert!(failure_cases(&v).is_empty());
    }
}

#[test]
fn verify_reports_known_failures() {
    let o = ehall(&["verify", "hall-cr"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(failure_cases(&json(&o)), ["CR5(n=1)"]);

    let o = ehall(&["verify", "affine"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        failure_cases(&json(&o)),
        ["DH2: y1*t1", "DH2: t1*y1", "DH3: y1*t1", "DH3: t1*y1", "DH3: y2*t2", "DH3: t2*y2"]
    );
}

#[test]
fn verify_output_is_deterministic() {
    let a = ehall(&["verify", "hall-jacobi", "--seed", "7"]);
    let b = ehall(&["verify", "hall-jacobi", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("wall_time").is_none());

    let t = ehall(&["verify", "newton", "--timing"]);
    assert!(json(&t)["wall_time"].as_f64().unwrap() >= 0.0);
}

#[test]
fn verify_unknown_suite() {
    let o = ehall(&["verify", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite"));
}
