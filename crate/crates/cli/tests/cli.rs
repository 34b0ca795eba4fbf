use std::fs;
use std::path::Path;
use std::process::Command;

use catcoh_cli::run;
use serde_json::{json, Value};

fn group_json(n: usize, letter: &str) -> Value {
    let morphisms: Vec<Value> = (0..n).map(|i| json!({ "id": format!("{letter}{i}"), "src": "*", "tgt": "*" })).collect();
    let mut compose = Vec::new();
    for a in 1..n {
        for b in 1..n {
            compose.push(json!([format!("{letter}{a}"), format!("{letter}{b}"), format!("{letter}{}", (a + b) % n)]));
        }
    }
    json!({ "objects": ["*"], "morphisms": morphisms, "identity": { "*": format!("{letter}0") }, "compose": compose })
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

fn point(dir: &Path) -> String {
    write(dir, "point.json", &json!({ "objects": ["x"], "morphisms": [{ "id": "1x", "src": "x", "tgt": "x" }], "identity": { "x": "1x" } }))
}

fn quotient(dir: &Path) -> String {
    let f = json!({
        "source": group_json(4, "a"),
        "target": group_json(2, "b"),
        "objects": { "*": "*" },
        "morphisms": { "a0": "b0", "a1": "b1", "a2": "b0", "a3": "b1" },
    });
    write(dir, "quotient.json", &f)
}

#[test]
fn terminal_category_has_cohomology_of_a_point() {
    let dir = tempfile::tempdir().unwrap();
    let cat = point(dir.path());
    let out = run(["catcoh", "--nmax", "3", "cohomology", "--category", &cat]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "H^0 = 1\nH^1 = 0\nH^2 = 0\nH^3 = 0\n");
    let csv = run(["catcoh", "--nmax", "3", "--format", "csv", "cohomology", "--category", &cat]);
    assert_eq!(csv.stdout, "n,dim\n0,1\n1,0\n2,0\n3,0\n");
}

#[test]
fn cyclic_group_cohomology_over_two_fields() {
    let dir = tempfile::tempdir().unwrap();
    let z4 = write(dir.path(), "z4.json", &group_json(4, "g"));
    let structured = |field: &str| -> Value {
        let out = run(["catcoh", "--field", field, "--format", "structured", "cohomology", "--category", &z4]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    };
    let f2 = structured("F2");
    assert_eq!(f2["graded"][0]["dims"], json!([1, 1, 1, 1, 1]));
    assert_eq!(f2["schema"], "catcoh/v1");
    let q = structured("Q");
    assert_eq!(q["graded"][0]["dims"], json!([1, 0, 0, 0, 0]));
    assert_eq!(q["field"], "Q");
}

#[test]
fn orbit_category_of_z2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.json");
    let out = run(["catcoh", "build", "--kind", "orbit", "--group-name", "Z2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let raw: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(raw["objects"].as_array().unwrap().len(), 2);
    assert_eq!(raw["morphisms"].as_array().unwrap().len(), 4);
    // the built file is itself valid input
    let again = run(["catcoh", "validate", "--category", path.to_str().unwrap()]);
    assert_eq!(again.code, 0, "{}", again.stdout);
}

#[test]
fn subgroup_decomposition_for_d8_is_a_single_column() {
    let out = run([
        "catcoh",
        "--format",
        "csv",
        "--nmax",
        "2",
        "e2",
        "--shape",
        "subgroup",
        "--group-name",
        "D8",
        "--prime",
        "2",
        "--collection",
        "p-centric",
        "--pmax",
        "3",
        "--qmax",
        "3",
    ]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    let page: Vec<&str> = out.stdout.split("\n\n").next().unwrap().lines().collect();
    assert_eq!(page[0], "p,q,dim");
    for line in &page[1..] {
        let v: Vec<usize> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let expected = if v[0] == 0 { v[1] + 1 } else { 0 };
        assert_eq!(v[2], expected, "cell {line}");
    }
}

#[test]
fn pages_detect_the_nonzero_differential() {
    let dir = tempfile::tempdir().unwrap();
    let f = quotient(dir.path());
    let out = run(["catcoh", "--format", "structured", "pages", "--functor", &f, "--revalidate"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["nonzero_higher_differential"], json!(true));
    assert_eq!(v["graded"][0]["dims"], json!([1, 1, 1, 1, 1]));
    assert_eq!(v["ok"], json!(true));
}

#[test]
fn laws_pass_on_the_quotient() {
    let dir = tempfile::tempdir().unwrap();
    let f = quotient(dir.path());
    for law in ["adjunction", "induced-ext", "regularity"] {
        let out = run(["catcoh", "--nmax", "3", "check", "--law", law, "--functor", &f]);
        assert_eq!(out.code, 0, "{law}: {}{}", out.stdout, out.stderr);
    }
    let out = run(["catcoh", "check", "--law", "linking-axioms", "--group-name", "S3", "--prime", "2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
}

#[test]
fn outputs_are_deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let f = quotient(dir.path());
    let cache = dir.path().join("cache");
    let args = ["catcoh", "--format", "structured", "--cache-dir", cache.to_str().unwrap(), "pages", "--functor", &f];
    let first = run(args);
    let second = run(args);
    assert_eq!(first.code, 0);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 1);
    let uncached = run(["catcoh", "--format", "structured", "pages", "--functor", &f]);
    assert_eq!(first.stdout, uncached.stdout);
}

#[test]
fn corrupt_cache_entries_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let cat = point(dir.path());
    let cache = dir.path().join("cache");
    let args = ["catcoh", "--cache-dir", cache.to_str().unwrap(), "cohomology", "--category", &cat];
    assert_eq!(run(args).code, 0);
    let entry = fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    fs::write(&entry, "{ not json").unwrap();
    let out = run(args);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("corrupt"), "{}", out.stderr);
}

#[test]
fn errors_and_failed_checks_use_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cat = point(dir.path());
    assert_eq!(run(["catcoh", "--nmax", "0", "cohomology", "--category", &cat]).code, 2);
    assert_eq!(run(["catcoh", "--field", "F4", "cohomology", "--category", &cat]).code, 2);
    assert_eq!(run(["catcoh", "cohomology", "--category", "missing.json"]).code, 2);
    let bad = write(dir.path(), "bad.json", &json!({ "objects": ["x"], "morphisms": [], "identity": { "x": "1x" } }));
    let out = run(["catcoh", "validate", "--category", &bad]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL"));
    assert_eq!(run(["catcoh", "--help"]).code, 0);
}

#[test]
fn binary_exit_code_matches() {
    let out = Command::new(env!("CARGO_BIN_EXE_catcoh")).args(["build", "--kind", "fusion", "--group-name", "S3"]).output().unwrap();
    assert!(out.status.success());
    let raw: Value = serde_json::from_slice(&out.stdout[..out.stdout.len() - "check EI: pass\n".len()]).unwrap();
    assert!(!raw["objects"].as_array().unwrap().is_empty());
}
