use std::path::Path;
use std::process::{Command, Output};

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk")).args(args).output().expect("qwalk runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn flyswatter_construct_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let o = qwalk(&["construct", "flyswatter", "--n", "4", "-o", path_str(&g)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = qwalk(&["check", "pst", path_str(&g), "--pair", "1,7", "--pair-dst", "3,5", "--tau", "pi/sqrt2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PST holds"));
    // wrong time fails with exit 1
    let o = qwalk(&["check", "pst", path_str(&g), "--pair", "1,7", "--pair-dst", "3,5", "--tau", "1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn infinite_tail_reports_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    assert_eq!(code(&qwalk(&["construct", "flyswatter", "--tail", "inf", "-o", path_str(&g)])), 0);
    let o = qwalk(&["check", "pst", path_str(&g), "--pair", "1,7", "--pair-dst", "3,5", "--tau", "pi/sqrt2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("truncation depth"));
}

#[test]
fn blowup_and_cayley() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("b.json");
    assert_eq!(code(&qwalk(&["construct", "blowup", "--base", "p3", "--copies", "2", "-o", path_str(&g)])), 0);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(doc["n"], 6);
    let o = qwalk(&["check", "pst", path_str(&g), "--plus", "0,3", "--plus-dst", "2,5", "--tau", "pi/(2*sqrt2)"]);
    assert_eq!(code(&o), 0);

    let c = dir.path().join("c.json");
    let o = qwalk(&["construct", "cayley", "--group", "6,4", "--conn", "(1,0),(5,0),(0,1),(0,2),(0,3)", "-o", path_str(&c)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&c).unwrap()).unwrap();
    assert_eq!(doc["n"], 24);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 24 + 36);
    let o = qwalk(&["construct", "cayley", "--group", "6", "--conn", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sedentary_and_periodic() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k5.json");
    assert_eq!(code(&qwalk(&["construct", "complete", "--n", "5", "-o", path_str(&g)])), 0);
    let o = qwalk(&["check", "sedentary", path_str(&g), "--vertex", "0", "--horizon", "auto", "--claim", "0.6"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("exact period"));
    let o = qwalk(&["check", "pst", path_str(&g), "--pair", "0,1", "--pair-dst", "0,1", "--tau", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Periodic"));
}

#[test]
fn switching_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let s = dir.path().join("s.json");
    assert_eq!(code(&qwalk(&["construct", "six-vertex", "-o", path_str(&g)])), 0);
    let o = qwalk(&["transform", "switch", path_str(&g), "--negate", "2,5", "-o", path_str(&s)]);
    assert_eq!(code(&o), 0);
    let o = qwalk(&["check", "pst", path_str(&s), "--pair", "1,2", "--pair-dst", "4,5", "--tau", "pi/(2*sqrt2)"]);
    assert_eq!(code(&o), 0);
    let o = qwalk(&["transform", "balance", path_str(&s), path_str(&g)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("balanced"));
}

#[test]
fn analyze_finds_twins() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    assert_eq!(code(&qwalk(&["construct", "p2-twins", "-o", path_str(&g)])), 0);
    let o = qwalk(&["analyze", path_str(&g), "--twins", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let found = v["twin_structures"].as_array().unwrap();
    assert!(found.iter().any(|t| t["x1"] == serde_json::json!(["1", "2"]) && t["x2"] == serde_json::json!(["5", "4"])));
}

#[test]
fn bad_params_exit_2() {
    assert_eq!(code(&qwalk(&["construct", "h2p", "--p", "2"])), 2);
    assert_eq!(code(&qwalk(&["construct", "no-such-gadget"])), 2);
    assert_eq!(code(&qwalk(&["reproduce", "--set", "bogus"])), 2);
}

#[test]
fn reproduce_is_deterministic() {
    let a = qwalk(&["reproduce", "--set", "§4"]);
    let b = qwalk(&["reproduce", "--set", "quotient"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("4/4 claims pass"));
}

#[test]
fn exhaustive_trees() {
    let o = qwalk(&["experiment", "trees", "--exhaustive", "--sizes", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("5,125,60,60,0.48"));
}
