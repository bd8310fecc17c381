//! Black-box tests of the command-line interface: exit codes, JSON
//! determinism, and the documented example invocations.

use std::process::{Command, Output};

fn k3kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3kit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn lattice_invariants_by_name() {
    let out = k3kit(&["lattice", "invariants", "--name", "U", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["invariants"]["det"], "-1");
    assert_eq!(v["results"]["invariants"]["signature"][0], 1);
    assert_eq!(v["results"]["invariants"]["signature"][1], 1);
}

#[test]
fn lattice_literal_input() {
    let out = k3kit(&[
        "lattice",
        "invariants",
        "--literal",
        r#"{"rank": 2, "gram": [[2, 0], [0, -2]]}"#,
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["invariants"]["det"], "-4");
    assert_eq!(v["results"]["discriminant_group"][0], "2");
    assert_eq!(v["results"]["discriminant_group"][1], "2");
}

#[test]
fn bad_literal_is_exit_2() {
    let out = k3kit(&["lattice", "invariants", "--literal", "{not json", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    // degenerate (domain) input: exit 1
    let out = k3kit(&[
        "lattice",
        "invariants",
        "--literal",
        r#"{"rank": 2, "gram": [[1, 1], [1, 1]]}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
    // unknown subcommand: clap parse failure, exit 2
    let out = k3kit(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nikulin_verify_passes() {
    let out = k3kit(&["nikulin", "verify", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    let citations = v["citations"].as_array().unwrap();
    assert!(citations.iter().any(|c| c.as_str().unwrap().contains("Lem 2")));
}

#[test]
fn ns_classify_even_case() {
    let out = k3kit(&["ns", "classify", "--d", "2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["candidate_count"], 2);
    assert_eq!(v["results"]["glue_norm"], -4);
    assert!(v["results"]["glue_vector"].is_array());
}

#[test]
fn elliptic_analyze_example() {
    let out = k3kit(&[
        "elliptic",
        "analyze",
        "--a",
        "0,0,0,0,1",
        "--b",
        "1,0,0,0,0,0,0,0,1",
        "--quotient",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["euler_sum"], 24);
    assert_eq!(v["results"]["rho"], 10);
    assert_eq!(v["results"]["transcendental_dim"], 12);

    // degenerate model: domain error, exit 1
    let out = k3kit(&["elliptic", "analyze", "--a", "0", "--b", "1"]);
    assert_eq!(out.status.code(), Some(1));

    // malformed coefficients: exit 2
    let out = k3kit(&["elliptic", "analyze", "--a", "1,x", "--b", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn motive_decide_branches() {
    let out = k3kit(&["motive", "decide", "--valence", "-1", "--pg", "1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["outcome"], "T2Isomorphism");

    let out = k3kit(&["motive", "decide", "--valence", "1", "--pg", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classify_descriptor_file() {
    let dir = std::env::temp_dir();
    let path = dir.join("k3kit_cli_descriptor.json");
    std::fs::write(
        &path,
        r#"{"kind": "K3", "rho": 20, "pg": 1, "q": 0, "features": ["NikulinInvolution"], "assumptions": []}"#,
    )
    .unwrap();
    let out = k3kit(&["classify", "--descriptor", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let facts = v["results"]["facts"].as_array().unwrap();
    assert!(facts
        .iter()
        .any(|f| f["conclusion"] == "MotiveIsoWithQuotient"));

    // inconsistent descriptor: exit 1
    std::fs::write(
        &path,
        r#"{"kind": "K3", "features": [{"EvenSet": 7}]}"#,
    )
    .unwrap();
    let out = k3kit(&["classify", "--descriptor", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(&path).ok();
}

#[test]
fn json_output_is_byte_identical() {
    let args = ["ns", "classify", "--d", "4", "--json"];
    let first = stdout(&k3kit(&args));
    let second = stdout(&k3kit(&args));
    assert!(!first.is_empty());
    assert_eq!(first, second);
}

#[test]
fn selftest_passes() {
    let out = k3kit(&["selftest"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}
