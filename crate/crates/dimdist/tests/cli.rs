//! End-to-end checks of the command-line interface: output shapes, the JSON
//! report schema, and exit codes.

use std::process::Command;

fn dimdist() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dimdist"))
}

#[test]
fn compute_text_and_json() {
    let out = dimdist()
        .args(["compute", "--graph6", "D?{"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n:             5"));
    assert!(text.contains("dim:"));

    let out = dimdist()
        .args(["compute", "--graph6", "D?{", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 5);
    assert_eq!(v["graph6"], "D?{");
    // K_{1,4}: dim 3, D 4
    assert_eq!(v["dim"], 3);
    assert_eq!(v["distinguishing_number"], 4);
    assert!(v["twin"]["classes"].is_array());
}

#[test]
fn verify_json_schema_and_exit_codes() {
    let out = dimdist()
        .args(["verify", "--check", "prop-main", "--max-n", "4", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "prop-main at n<=4 must pass");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["check"], "prop-main");
    assert_eq!(v["corpus"]["class"], "connected");
    assert_eq!(v["corpus"]["n"], 4);
    assert_eq!(v["examined"], 10);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["inconclusive"].as_array().unwrap().len(), 0);
    assert!(v["elapsed_ms"].is_number());
    assert_eq!(v["config"]["timeout_ms"], 10_000);
    assert!(v["config"]["jobs"].is_number());

    // the D = n-2 family list has two genuine counterexamples at n = 5, so
    // this check exits nonzero with the violations listed
    let out = dimdist()
        .args(["verify", "--check", "thm-D-n2", "--max-n", "5", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["violations"].as_array().unwrap().len(), 2);

    // prop-lemn2 without --ell is a usage error
    let out = dimdist()
        .args(["verify", "--check", "prop-lemn2", "--max-n", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_outputs_graph6_lines() {
    let out = dimdist()
        .args(["enumerate", "--n", "4", "--class", "all"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 11);
    for line in &lines {
        assert_eq!(dimdist::graph6::decode(line).unwrap().n(), 4);
    }

    let out = dimdist()
        .args(["enumerate", "--n", "4", "--class", "trees"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
}

#[test]
fn family_construction() {
    let out = dimdist()
        .args(["family", "--spec", "wheel:5", "--g6"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let line = String::from_utf8(out.stdout).unwrap();
    let g = dimdist::graph6::decode(line.trim()).unwrap();
    assert_eq!(g.n(), 6);
    assert_eq!(g.edge_count(), 10);

    let out = dimdist()
        .args(["family", "--spec", "propw:2,3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("n=9"));

    let out = dimdist()
        .args(["family", "--spec", "cycle:2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compute_rejects_bad_graph6() {
    let out = dimdist().args(["compute", "--graph6", ""]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("error"));
}

#[test]
fn verify_reads_corpus_files() {
    let dir = std::env::temp_dir();
    let path = dir.join("dimdist_cli_corpus.g6");
    // connected graphs on 4 vertices
    let out = dimdist()
        .args(["enumerate", "--n", "4", "--class", "connected"])
        .args(["--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = dimdist()
        .args(["verify", "--check", "prop-main", "--max-n", "4"])
        .args(["--corpus", path.to_str().unwrap(), "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["examined"], 6);
    std::fs::remove_file(&path).ok();
}
