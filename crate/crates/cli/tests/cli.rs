use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphconf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn machine(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "machine"]);
    let out = run(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("machine output is json")
}

fn betti(v: &Value) -> Vec<u64> {
    v["result"]["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["betti"].as_u64().unwrap())
        .collect()
}

#[test]
fn homology_of_named_families() {
    let v = machine(&["homology", "--graph", "banana:4", "-n", "3"]);
    assert_eq!(betti(&v), vec![1, 26, 1]);
    assert_eq!(v["result"]["euler_characteristic"], -24);
    let v = machine(&["homology", "--graph", "k:5", "-n", "2"]);
    assert_eq!(betti(&v), vec![1, 12, 1]);
    let v = machine(&[
        "homology", "--graph", "interval", "-n", "3", "--sinks", "0,1",
    ]);
    assert_eq!(betti(&v), vec![1, 5]);
    for d in v["result"]["degrees"].as_array().unwrap() {
        assert!(d["torsion"].as_array().unwrap().is_empty());
    }
}

#[test]
fn surface_check_reports_genus() {
    let v = machine(&["surface-check", "--graph", "k33", "-n", "2"]);
    assert_eq!(v["result"]["genus"], 4);
    let v = machine(&["surface-check", "--graph", "banana:4", "-n", "3"]);
    assert_eq!(v["result"]["genus"], 13);
    let v = machine(&["surface-check", "--graph", "star:3", "-n", "2"]);
    assert_eq!(v["result"]["status"], "not a homology surface");
    assert!(v["result"]["genus"].is_null());
}

#[test]
fn span_on_the_h_graph() {
    let v = machine(&["span", "--graph", "h", "-n", "2", "--degree", "1"]);
    assert_eq!(v["result"]["status"], "GENERATED");
    assert_eq!(v["result"]["span_rank"], v["result"]["betti"]);
    assert_eq!(v["result"]["betti"], 3);
}

#[test]
fn graph_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(
        &path,
        r#"{"vertices": 2, "edges": [[0, 1]], "sinks": [0, 1]}"#,
    )
    .unwrap();
    let v = machine(&["homology", "--graph", path.to_str().unwrap(), "-n", "4"]);
    assert_eq!(betti(&v), vec![1, 17]);
}

#[test]
fn machine_output_is_deterministic() {
    let a = run(&[
        "homology", "--graph", "k33", "-n", "2", "--format", "machine",
    ]);
    let b = run(&[
        "homology", "--graph", "k33", "-n", "2", "--format", "machine",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&[
        "verify",
        "--only",
        "properties/snf-oracle",
        "--cases",
        "50",
        "--format",
        "machine",
    ]);
    let b = run(&[
        "verify",
        "--only",
        "properties/snf-oracle",
        "--cases",
        "50",
        "--format",
        "machine",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["homology", "--graph", "nope", "-n", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["homology", "-n", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["homology", "--graph", "star:3", "-n", "2", "--caps", "bogus=1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "homology",
            "--graph",
            "k:5",
            "-n",
            "3",
            "--caps",
            "cells=100"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        run(&["verify", "--only", "no-such-check"]).status.code(),
        Some(2)
    );
    // degree-2 classes on the banana graph are not products of basic classes
    assert_eq!(
        run(&["span", "--graph", "banana:4", "-n", "3", "--degree", "2"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_small_spaces_group() {
    let v: Value = {
        let out = run(&["verify", "--only", "small-spaces", "--format", "machine"]);
        assert!(out.status.success());
        serde_json::from_slice(&out.stdout).unwrap()
    };
    assert_eq!(v["checks"].as_array().unwrap().len(), 25);
    assert_eq!(v["failed"], 0);
}

#[test]
fn export_writes_documents() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "export",
        "--graph",
        "star:3",
        "-n",
        "2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let complex = std::fs::read_to_string(dir.path().join("complex.txt")).unwrap();
    assert!(complex.contains("cells 0 18"));
    assert!(complex.contains("boundary 1 18 18"));
    let classes = std::fs::read_to_string(dir.path().join("classes.txt")).unwrap();
    assert!(classes.starts_with("class Star degree 1 support 12"));
    let h: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("homology.json")).unwrap())
            .unwrap();
    assert_eq!(betti(&h), vec![1, 1]);
    assert_eq!(
        run(&["export", "--graph", "star:3", "-n", "2"])
            .status
            .code(),
        Some(2)
    );
}
