use std::process::{Command, Output};

fn krc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krc")).args(args).output().expect("run krc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

#[test]
fn enumerate_lists_29_columns_for_d4_k2() {
    let o = krc(&["enumerate", "--n", "4", "--k", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 29);
    assert_eq!(text.lines().next(), Some("1 2"));
    let kn = krc(&["enumerate", "--n", "4", "--k", "2", "--kn"]);
    assert_eq!(stdout(&kn).lines().count(), 28);
}

#[test]
fn norm_prints_the_polynomial() {
    let o = krc(&["norm", "--n", "4", "--k", "2", "--l", "1", "--c", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 + q^2\n");
    let zero = krc(&["norm", "--n", "4", "--k", "2", "--l", "1", "--c", "1", "--j", "1"]);
    assert_eq!(stdout(&zero), "0\n");
}

#[test]
fn verify_small_grid_exits_zero() {
    let o = krc(&["verify", "--n-max", "4", "--k-max", "2", "--l-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));
    assert!(text.ends_with("0 failed\n"));
}

#[test]
fn verify_json_has_report_fields() {
    let o = krc(&["verify", "--n-max", "4", "--k-max", "1", "--l-max", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let first = &v.as_array().unwrap()[0];
    for key in ["name", "params", "passed", "details", "wall_time_ms"] {
        assert!(first.get(key).is_some(), "{key}");
    }
}

#[test]
fn spin_nodes_are_usage_errors() {
    let o = krc(&["enumerate", "--n", "4", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("spin"));
    assert_eq!(krc(&["graph", "--n", "3", "--k", "1"]).status.code(), Some(2));
    assert_eq!(krc(&["norm", "--n", "4", "--k", "2", "--l", "1", "--c", "2"]).status.code(), Some(2));
    assert_eq!(krc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn budget_overrun_exits_one() {
    let o = krc(&["graph", "--n", "5", "--k", "3", "--node-budget", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn graph_exports_are_deterministic() {
    let a = krc(&["graph", "--n", "4", "--k", "1"]);
    let b = krc(&["graph", "--n", "4", "--k", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let dot = stdout(&a);
    assert!(dot.starts_with("digraph crystal {\n"));
    assert_eq!(dot.matches("->").count(), 10);
    let classical = krc(&["graph", "--n", "4", "--k", "1", "--labels", "classical"]);
    assert_eq!(stdout(&classical).matches("->").count(), 8);
    let json = krc(&["graph", "--n", "4", "--k", "1", "--labels", "0,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["labels"], serde_json::json!([0, 1]));
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn act_applies_zero_operators() {
    let o = krc(&["act", "--n", "5", "--k", "3", "--column", "1,2,3", "--i", "0", "--op", "e"]);
    assert_eq!(stdout(&o), "1 3 1b\n");
    let back = krc(&["act", "--n", "5", "--k", "3", "--column", "1,3,1b", "--i", "0"]);
    assert_eq!(stdout(&back), "1 2 3\n");
    let null = krc(&["act", "--n", "5", "--k", "3", "--column", "1,2,3", "--i", "1", "--op", "e"]);
    assert_eq!(stdout(&null), "0\n");
    let bad = krc(&["act", "--n", "5", "--k", "3", "--column", "1,1", "--i", "0"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn decompose_and_paths() {
    let o = krc(&["decompose", "--n", "4", "--k", "2", "--set", "b1"]);
    assert_eq!(stdout(&o), "size 329\n0\nL2\n2*L2\n");
    let p = krc(&["paths", "--n", "4", "--k", "2", "--l", "2"]);
    assert!(stdout(&p).starts_with("paths 329\n"));
}
