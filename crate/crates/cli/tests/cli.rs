use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn omlkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omlkit")).args(args).output().expect("run omlkit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_exit_codes() {
    assert_eq!(omlkit(&["check", "--gen", "mo:2", "--piron"]).status.code(), Some(0));
    let o6 = omlkit(&["check", "--gen", "o6", "--orthomodular"]);
    assert_eq!(o6.status.code(), Some(1));
    assert!(stdout(&o6).contains("[FAIL]"));
    let boolean = omlkit(&["check", "--gen", "boolean:2", "--irreducible"]);
    assert_eq!(boolean.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(omlkit(&["check"]).status.code(), Some(2));
    assert_eq!(omlkit(&["check", "--gen", "tetrahedron"]).status.code(), Some(2));
    let unknown = omlkit(&["demo", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stderr(&unknown).contains("prbox-boolean"));
    assert_eq!(omlkit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", "{\n  \"elements\": [,]\n}\n");
    let o = omlkit(&["check", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn generated_files_load_back() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("mo3.json");
    let out = out.to_str().unwrap();
    let g = omlkit(&["gen", "mo:3", "-o", out]);
    assert_eq!(g.status.code(), Some(0));
    assert!(stdout(&g).contains("wrote 8 elements"));
    let first = std::fs::read_to_string(out).unwrap();

    assert_eq!(omlkit(&["check", out, "--orthomodular", "--atomic"]).status.code(), Some(0));
    let again = dir.path().join("again.json");
    omlkit(&["gen", "mo:3", "-o", again.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(again).unwrap(), first);
}

#[test]
fn closure_seed_files_and_the_cap() {
    let dir = TempDir::new().unwrap();
    let seed = write(
        dir.path(),
        "seed.json",
        r#"{"dim": 4, "rays": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1],[1,0,0,1]], "closure_depth": 2}"#,
    );
    let out = dir.path().join("frag.json");
    let g = omlkit(&["gen", &format!("closure:{seed}"), "-o", out.to_str().unwrap()]);
    assert!(stdout(&g).contains("wrote 24 elements"), "{}", stderr(&g));
    assert_eq!(omlkit(&["check", out.to_str().unwrap(), "--orthomodular"]).status.code(), Some(0));

    let capped = Command::new(env!("CARGO_BIN_EXE_omlkit"))
        .args(["gen", &format!("closure:{seed}"), "-o", out.to_str().unwrap()])
        .env("OMLKIT_CLOSURE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(stderr(&capped).contains("cap"));
}

#[test]
fn product_embedding_files() {
    let dir = TempDir::new().unwrap();
    omlkit(&["gen", "boolean:4", "-o", dir.path().join("b4.json").to_str().unwrap()]);
    let emb = r#"{
        "factor_a": {"generator": "boolean", "n": 2},
        "factor_b": {"generator": "boolean", "n": 2},
        "product": "b4.json",
        "inj_a": {"0": "0", "a1": "a1+a2", "a2": "a3+a4", "1": "1"},
        "inj_b": {"0": "0", "a1": "a1+a3", "a2": "a2+a4", "1": "1"}
    }"#;
    let path = write(dir.path(), "emb.json", emb);
    let o = omlkit(&["product", "--embedding", &path, "--json"]);
    // Boolean products satisfy everything except irreducibility
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let passed: Vec<bool> = doc["steps"].as_array().unwrap().iter().map(|s| s["passed"].as_bool().unwrap()).collect();
    assert_eq!(passed, [false, true, true, true, true]);

    let broken = write(dir.path(), "broken.json", &emb.replace("\"a3+a4\"", "\"a3\""));
    let o = omlkit(&["product", "--embedding", &broken]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("orthocomplement"));
}

#[test]
fn povm_files() {
    let dir = TempDir::new().unwrap();
    let half = r#"[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]"#;
    let good = write(
        dir.path(),
        "good.json",
        &format!(r#"{{"effects": [{{"label": "E0", "matrix": {half}}}, {{"label": "E1", "matrix": {half}}}]}}"#),
    );
    assert_eq!(omlkit(&["povm", &good]).status.code(), Some(0));
    let over = write(
        dir.path(),
        "over.json",
        &format!(
            r#"{{"effects": [{{"label": "E0", "matrix": {half}}}, {{"label": "E1", "matrix": [[[0.6,0],[0,0]],[[0,0],[0.5,0]]]}}]}}"#
        ),
    );
    let o = omlkit(&["povm", &over]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("max deviation 0.1"));
    assert_eq!(omlkit(&["povm", &over, "--tol", "0.2"]).status.code(), Some(0));
}

#[test]
fn demos_take_configs_and_json() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"a1": [1, 0], "a2": [1, -1], "beta": [0, 1]}"#);
    assert_eq!(omlkit(&["demo", "no-cloning", "--config", &cfg]).status.code(), Some(0));
    let same = write(dir.path(), "s.json", r#"{"a1": [1, 0], "a2": [2, 0], "beta": [0, 1]}"#);
    assert_eq!(omlkit(&["demo", "no-cloning", "--config", &same]).status.code(), Some(2));

    let o = omlkit(&["demo", "sequential-povm", "--theta", "-0.3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["verdict"], "pass");
}
