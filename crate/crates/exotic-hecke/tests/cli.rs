use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exotic-hecke"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

#[test]
fn report_round_trips() {
    let (code, v) = json(&["fibers", "--rep", "v2ab+vb"]);
    assert_eq!(code, 0);
    let text = serde_json::to_string(&v).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);
    assert_eq!(v["config"]["rep"], "v2ab+vb");
    assert_eq!(v["result"]["counts"][0]["points"], 7);
}

#[test]
fn relations_on_presets() {
    for ty in ["A1", "A2", "G2"] {
        let (code, v) = json(&["relations", "--type", ty, "--trials", "10"]);
        assert_eq!(code, 0, "{ty}");
        assert_eq!(v["result"]["passed"], true);
        assert_eq!(v["config"]["datum"], ty);
    }
}

#[test]
fn classify_example_two_is_infinite() {
    let (code, v) = json(&["classify", "--char", "data/example2.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["finiteness"]["verdict"], "Infinite");
    assert!(v["result"]["classification"].is_null());
    assert!(v["result"]["simple_count"].is_null());
}

#[test]
fn classify_generic_matches() {
    let (code, v) = json(&["classify", "--char", "data/generic.json", "--field", "9"]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
    assert_eq!(v["result"]["class_count"], 4);
    assert_eq!(v["result"]["simple_count"]["simple_count"], 4);
    assert_eq!(v["result"]["simple_count"]["dim"], 144);
    assert_eq!(v["result"]["match"], true);
}

#[test]
fn tables_report_the_orbit_data() {
    let (code, v) = json(&["tables", "--field", "3"]);
    assert_eq!(code, 0);
    let s = serde_json::to_string(&v["result"]).unwrap();
    assert!(s.contains("1456"));
}

#[test]
fn pretty_output() {
    let out = run(&["orbits", "--field", "3", "--pretty"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("orbits (ok)"));
}

#[test]
fn bad_input_exits_with_one() {
    for args in [
        vec!["bogus"],
        vec!["relations", "--type", "A2", "--param-map", "q1,q2"],
        vec!["classify", "--char", "data/missing.json"],
        vec!["relations", "--type", "E9"],
        vec!["fibers"],
        vec!["fibers", "--rep", "vx"],
        vec!["relations", "--set", "q1"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
