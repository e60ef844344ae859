use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_birkhoff"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report = if stdout.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&stdout).expect("stdout is one JSON document")
    };
    (code, report)
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn decompose_identity() {
    let (code, r) = run(&["decompose", "3", "--identity"]);
    assert_eq!(code, 0);
    assert_eq!(r["command"], "decompose");
    assert_eq!(r["pass"], true);
    assert_eq!(r["details"]["sigma"], serde_json::json!([0, 1, 2]));
    assert_eq!(r["details"]["tau"], serde_json::json!([0, 1, 2]));
    assert_eq!(r["details"]["epsilon"], 1);
}

#[test]
fn decompose_rejects_a_non_symmetry() {
    // Swapping the identity with the transposition (0 1) breaks the facets.
    let path = temp_file("swap.txt", "2\n1\n0\n3\n4\n5\n");
    let (code, r) = run(&["decompose", "3", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["pass"], false);
    assert!(r["details"]["failure"].as_str().unwrap().contains("not a facet symmetry"));
}

#[test]
fn symmetry_group_of_b3() {
    let (code, r) = run(&["verify-symmetry-group", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["details"]["order"], 72);
}

#[test]
fn cd_lattice_of_s4() {
    let (code, r) = run(&["cd-lattice", "--group", "s4", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(r["details"]["lattice_labels"], serde_json::json!(["1", "S4"]));
}

#[test]
fn group_files_are_accepted() {
    let path = temp_file("s3.txt", "(0 1)\n(0 1 2)\n");
    let (code, r) = run(&["wreath", "--group", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["details"]["actual"], 72);
}

#[test]
fn hull_of_a_square() {
    let path = temp_file("square.json", r#"{"vertices": [["0","0"],["1","0"],["0","1"],["1","1"],["1/2","1/2"]]}"#);
    let (code, r) = run(&["hull", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["details"]["convention"], "normal·x <= offset");
    assert_eq!(r["details"]["facets"].as_array().unwrap().len(), 4);
    assert_eq!(r["details"]["all_points_are_vertices"], false);
}

#[test]
fn rep_polytope_default_fixture() {
    let (code, r) = run(&["rep-polytope"]);
    assert_eq!(code, 0);
    assert_eq!(r["details"]["order"], 6);
    assert_eq!(r["details"]["polytope"]["affine_dim"], 4);
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["cd-lattice", "--group", "not-a-group"]).0, 2);
    let (code, r) = run(&["verify-table", "2"]);
    assert_eq!(code, 3);
    assert_eq!(r["pass"], false);
    assert!(r["details"]["failure"].is_string());
    assert_eq!(run(&["normalizer", "--group", "s4"]).0, 3);
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: Value| {
        v["runtime_ms"] = Value::Null;
        v
    };
    for args in [&["regular-pairs", "--group", "s3"][..], &["uniqueness", "3"][..]] {
        let (_, a) = run(args);
        let (_, b) = run(args);
        assert_eq!(strip(a), strip(b));
    }
}
