use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use specblock::abelian::AbelianGroup;
use specblock::partition::{build_partition, GTripleJson, PartitionJson};
use specblock::symbol::{SemiregularFrame, SymbolJson};
use tempfile::NamedTempFile;

const CUBE: &str =
    r#"{"digraph": {"symbol": {"m": 2, "factors": [4], "entries": [[[1,3],[0]],[[0],[1,3]]]}}}"#;

fn spec_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specblock"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn lambdas(v: &Value, key: &str) -> Vec<f64> {
    v[key]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["lambda"]["re"].as_f64().unwrap())
        .collect()
}

#[test]
fn cube_spectrum() {
    let f = spec_file(CUBE);
    let v = json(&run(&["spectrum", f.path().to_str().unwrap(), "--oracle"]));
    assert_eq!(v["vertices"], 8);
    assert_eq!(lambdas(&v, "spectrum"), vec![3.0, 1.0, -1.0, -3.0]);
    let chars: Vec<Value> = v["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["characters"].clone())
        .collect();
    assert_eq!(
        chars,
        vec![
            serde_json::json!([0]),
            serde_json::json!([0, 1, 3]),
            serde_json::json!([1, 2, 3]),
            serde_json::json!([2])
        ]
    );
    let back: SymbolJson = serde_json::from_value(v["symbol"].clone()).unwrap();
    let original: Value = serde_json::from_str(CUBE).unwrap();
    let original: SymbolJson =
        serde_json::from_value(original["digraph"]["symbol"].clone()).unwrap();
    assert_eq!(
        back.to_symbol(None).unwrap(),
        original.to_symbol(None).unwrap()
    );
}

#[test]
fn cube_blocks_round_trip() {
    let f = spec_file(CUBE);
    let v = json(&run(&["blocks", f.path().to_str().unwrap(), "--oracle"]));
    assert_eq!(v["group_order"], 48);
    assert_eq!(v["oracle_checked"], true);
    let frame = SemiregularFrame::canonical(&AbelianGroup::cyclic(4), 2);
    for row in v["systems"].as_array().unwrap() {
        let t: GTripleJson = serde_json::from_value(row["triple"].clone()).unwrap();
        let b: PartitionJson = serde_json::from_value(row["blocks"].clone()).unwrap();
        assert_eq!(
            build_partition(&t.to_triple(&frame).unwrap(), &frame).unwrap(),
            b.to_partition().unwrap()
        );
        assert!(row["violations"].as_array().unwrap().is_empty());
    }
    let v = json(&run(&[
        "blocks",
        f.path().to_str().unwrap(),
        "--lambda",
        "-1",
    ]));
    let row = &v["systems"][0];
    assert_eq!(row["case"], "generates_dual");
    assert_eq!(
        row["blocks"]["cells"],
        serde_json::json!([[0, 6], [1, 7], [2, 4], [3, 5]])
    );
}

#[test]
fn arcs_with_generators() {
    let mut arcs = Vec::new();
    for x in 0..8usize {
        for bit in [1, 2, 4] {
            arcs.push(format!("[{x},{}]", x ^ bit));
        }
    }
    let spec = format!(
        r#"{{"digraph": {{"arcs": {{"n": 8, "arcs": [{}]}}}},
            "h": {{"generators": [[1,0,3,2,5,4,7,6],[2,3,0,1,6,7,4,5]]}}}}"#,
        arcs.join(",")
    );
    let f = spec_file(&spec);
    let v = json(&run(&["spectrum", f.path().to_str().unwrap()]));
    assert_eq!(lambdas(&v, "spectrum"), vec![3.0, 1.0, -1.0, -3.0]);
    assert_eq!(v["symbol"]["factors"], serde_json::json!([2, 2]));
    assert!(v["spectrum"][0]["characters"][0].is_array());
    let v = json(&run(&[
        "blocks",
        f.path().to_str().unwrap(),
        "--lambda",
        "-3",
    ]));
    assert_eq!(
        v["systems"][0]["blocks"]["cells"],
        serde_json::json!([[0, 3, 5, 6], [1, 2, 4, 7]])
    );
}

#[test]
fn orbital_seeds_and_text() {
    let spec = r#"{"digraph": {"orbital_seeds": [[0,1]]},
                   "h": {"generators": [[1,2,3,4,0]]},
                   "group": {"generators": [[1,2,3,4,0],[0,4,3,2,1]]}}"#;
    let f = spec_file(spec);
    let v = json(&run(&["spectrum", f.path().to_str().unwrap(), "--oracle"]));
    let c = 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos();
    let d = 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos();
    for (x, y) in lambdas(&v, "spectrum").iter().zip([2.0, c, d]) {
        assert!((x - y).abs() < 1e-12);
    }
    let out = run(&["blocks", f.path().to_str().unwrap(), "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("vertices 5, |G| = 10"));
    assert_eq!(text.matches("lambda = ").count(), 3);
}

#[test]
fn gp_commands() {
    let v = json(&run(&["gp", "filter", "12", "5"]));
    assert_eq!(v["cube"], true);
    assert_eq!(v["petersen"], false);
    let v = json(&run(&["gp", "lift", "--base", "cube", "--m", "6"]));
    assert_eq!(v["solutions"][0]["canonical"], serde_json::json!([24, 5]));
    assert_eq!(v["system"].as_array().unwrap().len(), 5);
    let v = json(&run(&["gp", "classify", "--max-n", "30"]));
    assert_eq!(
        v["edge_transitive"],
        serde_json::json!([[4, 1], [5, 2], [8, 3], [10, 2], [10, 3], [12, 5], [24, 5]])
    );
    let v = json(&run(&["gp", "classify", "--max-n", "12"]));
    assert!(v["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p["oracle"] == p["edge_transitive"]));
}

#[test]
fn deterministic_output() {
    let f = spec_file(CUBE);
    let a = run(&["blocks", f.path().to_str().unwrap()]);
    let b = run(&["blocks", f.path().to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let f = spec_file("{\"digraph\": {\"gp\": {\"n\": 5, \"s\": 2}},\n \"colour\": 1}");
    let out = run(&["spectrum", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains(":2:") && err.contains("unknown field `colour`"),
        "{err}"
    );

    let f = spec_file(r#"{"digraph": {"gp": {"n": 6, "s": 3}}}"#);
    assert_eq!(
        run(&["spectrum", f.path().to_str().unwrap()]).status.code(),
        Some(2)
    );

    let f = spec_file(
        r#"{"digraph": {"arcs": {"n": 3, "arcs": [[0,1]]}}, "h": {"generators": [[1,2,0]]}}"#,
    );
    assert_eq!(
        run(&["spectrum", f.path().to_str().unwrap()]).status.code(),
        Some(2)
    );

    let f = spec_file(CUBE);
    assert_eq!(
        run(&["blocks", f.path().to_str().unwrap(), "--cap", "5"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["blocks", f.path().to_str().unwrap(), "--lambda", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["gp", "lift", "--base", "prism", "--m", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["gp", "filter", "8", "4"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn second_cube_form() {
    let spec = r#"{"digraph": {"symbol": {"m": 2, "factors": [4], "entries": [[[],[1,2,3]],[[1,2,3],[]]]}}}"#;
    let f = spec_file(spec);
    let v = json(&run(&[
        "blocks",
        f.path().to_str().unwrap(),
        "--lambda",
        "-3",
    ]));
    let row = &v["systems"][0];
    assert_eq!(row["triple"]["delta"], serde_json::json!([[0], [1]]));
    assert_eq!(row["triple"]["k"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(row["case"], "principal_only");
    let v = json(&run(&[
        "blocks",
        f.path().to_str().unwrap(),
        "--lambda",
        "3",
    ]));
    assert_eq!(
        v["systems"][0]["blocks"]["cells"],
        serde_json::json!([[0, 1, 2, 3, 4, 5, 6, 7]])
    );
}

#[test]
fn petersen_and_empty_symbol() {
    let f = spec_file(r#"{"digraph": {"gp": {"n": 5, "s": 2}}}"#);
    let v = json(&run(&["spectrum", f.path().to_str().unwrap(), "--oracle"]));
    let l = lambdas(&v, "spectrum");
    assert!(
        l.iter()
            .zip([3.0, 1.0, -2.0])
            .all(|(x, y)| (x - y).abs() < 1e-9)
            && l.len() == 3
    );
    let f = spec_file(r#"{"digraph": {"symbol": {"m": 1, "factors": [3], "entries": [[[]]]}}}"#);
    let v = json(&run(&["spectrum", f.path().to_str().unwrap()]));
    assert_eq!(lambdas(&v, "spectrum"), vec![0.0]);
    assert_eq!(v["spectrum"][0]["multiplicity"], 3);
}
