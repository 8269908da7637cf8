use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_transversal"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn put(dir: &Path, name: &str, v: &Value) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, serde_json::to_vec(v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

fn doc(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "status {:?}: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn subsetsum_pipeline_yields_a_verified_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let ss = put(
        dir.path(),
        "ss.json",
        &json!({"kind": "subsetsum", "a": [1, 2], "b": 3}),
    );
    let red = dir.path().join("red.json").to_string_lossy().into_owned();
    let out = run(&["reduce", "subsetsum", &ss, "--output", &red]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("4 sets in R^3"));
    let inst: Value = serde_json::from_slice(&std::fs::read(&red).unwrap()).unwrap();
    assert_eq!(inst["origin"]["reduction"], "subsetsum");

    let res = doc(&run(&["transversal", "--hyperplane", &red]));
    assert_eq!(res["answer"], "yes");
    assert_eq!(res["certificate"]["flat"]["dimension"], 2);
    let cert = put(dir.path(), "cert.json", &res);
    let out = run(&["verify", &red, &cert]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("verified: membership"));
    assert!(!stdout(&out).contains("failed"));
}

#[test]
fn three_noncollinear_singletons_have_no_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(
        dir.path(),
        "p.json",
        &json!({"kind": "points", "dimension": 2, "points": [[0, 0], [1, 0], [0, 1]]}),
    );
    let res = doc(&run(&["transversal", "--hyperplane", &f]));
    assert_eq!(res["answer"], "no");
    assert!(res.get("certificate").is_none());
    let out = run(&["--expect", "yes", "transversal", "--hyperplane", &f]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn target_above_dimension_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(
        dir.path(),
        "p.json",
        &json!({"kind": "points", "dimension": 2, "points": [[0, 0]]}),
    );
    let out = run(&["transversal", "--target", "3", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).to_lowercase().contains("target"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn malformed_files_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(
        dir.path(),
        "p.json",
        &json!({"kind": "points", "dimension": 2, "points": [[0.5, 0]]}),
    );
    assert_eq!(run(&["wellsep", &f]).status.code(), Some(2));
    let f = put(
        dir.path(),
        "e.json",
        &json!({"kind": "points", "dimension": 2, "sets": [[[0, 0]], []]}),
    );
    assert_eq!(run(&["wellsep", &f]).status.code(), Some(2));
    assert_eq!(
        run(&["wellsep", "/nonexistent.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn wellsep_answers() {
    let dir = tempfile::tempdir().unwrap();
    let tri = put(
        dir.path(),
        "tri.json",
        &json!({"kind": "points", "dimension": 2, "points": [[0, 0], [1, 0], [0, 1]]}),
    );
    let res = doc(&run(&["wellsep", &tri]));
    assert_eq!(res["answer"], "yes");

    let nested = put(
        dir.path(),
        "nested.json",
        &json!({"kind": "points", "dimension": 2, "sets": [[[0, 0], [4, 0], [0, 4]], [[1, 1]]]}),
    );
    let res = doc(&run(&["wellsep", &nested]));
    assert_eq!(res["answer"], "no");
    assert_eq!(res["certificate"]["witness"]["I"], json!([0]));
    assert_eq!(res["certificate"]["flat"]["dimension"], 0);

    let four = put(
        dir.path(),
        "four.json",
        &json!({"kind": "points", "dimension": 2, "points": [[0, 0], [3, 0], [0, 3], [5, 5]]}),
    );
    let res = doc(&run(&["wellsep", &four]));
    assert_eq!(res["answer"], "no");
    assert_eq!(res["statistics"]["shortcut"], true);
    let cert = put(dir.path(), "cert.json", &res);
    assert!(run(&["verify", &four, &cert]).status.success());
}

#[test]
fn maxhyp_modes() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(
        dir.path(),
        "m.json",
        &json!({"kind": "points", "dimension": 2, "points": [[0, 0], [1, 1], [2, 2], [0, 3]]}),
    );
    let exact = doc(&run(&["maxhyp", "--mode", "exact", &f]));
    assert_eq!(exact["count"], 3);
    let approx = doc(&run(&["maxhyp", "--mode", "approx", &f]));
    assert!(approx["count"].as_u64().unwrap() <= 3);
    assert!(approx["case"].is_string());
    let cert = put(dir.path(), "c.json", &exact);
    assert!(run(&["verify", &f, &cert]).status.success());

    let few = put(
        dir.path(),
        "few.json",
        &json!({"kind": "points", "dimension": 3, "points": [[1, 2, 3], [0, 0, 1]]}),
    );
    let approx = doc(&run(&["maxhyp", "--mode", "approx", &few]));
    assert_eq!(approx["count"], 2);
    assert_eq!(approx["case"], "all-points");
}

#[test]
fn clique_reduction_shape() {
    let dir = tempfile::tempdir().unwrap();
    let g = put(
        dir.path(),
        "g.json",
        &json!({"kind": "graph", "n": 3, "edges": [[1, 2], [2, 3]]}),
    );
    let out = run(&["reduce", "clique", &g, "--k", "2"]);
    let inst = doc(&out);
    assert_eq!(inst["sets"].as_array().unwrap().len(), 10);
    assert_eq!(inst["dimension"], 12);
    assert_eq!(inst["target"], 8);
    let red = put(dir.path(), "red.json", &inst);
    assert_eq!(doc(&run(&["transversal", &red]))["answer"], "yes");
    assert_eq!(doc(&run(&["oracle", &g, "--k", "2"]))["answer"], "yes");
}

#[test]
fn collinear_padding_lift_carries_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(
        dir.path(),
        "w.json",
        &json!({"kind": "points", "dimension": 2, "sets": [[[1, 0]], [[0, 0]]], "target": 0}),
    );
    assert_eq!(doc(&run(&["transversal", &f]))["answer"], "no");
    let out = run(&["reduce", "flattrans-lift", "--mode", "paper", &f]);
    assert!(stderr(&out).contains("warning:"));
    let inst = doc(&out);
    assert_eq!(inst["origin"]["guarantee"], "not-answer-preserving");
    assert!(inst["origin"]["warning"].is_string());
    let lifted = put(dir.path(), "l.json", &inst);
    assert_eq!(
        doc(&run(&["transversal", "--hyperplane", &lifted]))["answer"],
        "yes"
    );

    let inst = doc(&run(&["reduce", "flattrans-lift", &f]));
    assert!(inst["origin"].get("warning").is_none());
    let lifted = put(dir.path(), "r.json", &inst);
    assert_eq!(
        doc(&run(&["transversal", "--hyperplane", &lifted]))["answer"],
        "no"
    );
}

#[test]
fn segment_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let ss = put(
        dir.path(),
        "ss.json",
        &json!({"kind": "subsetsum", "a": [2, 3], "b": 5}),
    );
    let red = put(
        dir.path(),
        "red.json",
        &doc(&run(&["reduce", "subsetsum", &ss])),
    );
    let segs = put(
        dir.path(),
        "segs.json",
        &doc(&run(&["reduce", "segments", &red])),
    );
    let res = doc(&run(&["transversal", &segs]));
    assert_eq!(res["answer"], "yes");
    let cert = put(dir.path(), "c.json", &res);
    let out = run(&["verify", &segs, &cert]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(
        run(&["transversal", "--target", "0", &segs]).status.code(),
        Some(2)
    );
}

#[test]
fn trivially_no_bin_packing() {
    let dir = tempfile::tempdir().unwrap();
    let bp = put(
        dir.path(),
        "bp.json",
        &json!({"kind": "binpacking", "w": [3, 3, 3], "bins": 2, "capacity": 4}),
    );
    let res = doc(&run(&["reduce", "binpacking", &bp]));
    assert_eq!(res["kind"], "trivially-no");
    assert_eq!(doc(&run(&["oracle", &bp]))["answer"], "no");
}

fn wellsep_certificate(dir: &Path) -> (String, Value) {
    let f = put(
        dir,
        "ws.json",
        &json!({"kind": "points", "dimension": 2, "sets": [[[0, 0], [4, 0]], [[2, -1], [2, 3]], [[9, 9]]]}),
    );
    let res = doc(&run(&["wellsep", &f]));
    assert_eq!(res["answer"], "no");
    (f, res["certificate"].clone())
}

#[test]
fn verify_rejects_a_flat_of_dimension_k_minus_1() {
    let dir = tempfile::tempdir().unwrap();
    let (f, mut cert) = wellsep_certificate(dir.path());
    let ok = put(dir.path(), "ok.json", &cert);
    assert!(run(&["verify", &f, &ok]).status.success());
    cert["flat"] = json!({"base": ["0", "0"], "basis": [["1", "0"], ["0", "1"]], "dimension": 2});
    let bad = put(dir.path(), "bad.json", &cert);
    let out = run(&["verify", &f, &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stdout(&out).contains("failed: dimension"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn verify_rejects_tampered_weights() {
    let dir = tempfile::tempdir().unwrap();
    let (f, mut cert) = wellsep_certificate(dir.path());
    let w = cert["witness"]["weights"]["2"].as_array_mut().unwrap();
    w[0] = json!("2");
    let bad = put(dir.path(), "bad.json", &cert);
    let out = run(&["verify", &f, &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stdout(&out).contains("failed: convexity"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn verify_rejects_a_moved_flat() {
    let dir = tempfile::tempdir().unwrap();
    let ss = put(
        dir.path(),
        "ss.json",
        &json!({"kind": "subsetsum", "a": [1, 2], "b": 3}),
    );
    let red = put(
        dir.path(),
        "red.json",
        &doc(&run(&["reduce", "subsetsum", &ss])),
    );
    let mut res = doc(&run(&["transversal", "--hyperplane", &red]));
    res["certificate"]["flat"]["base"][0] = json!("100");
    let bad = put(dir.path(), "bad.json", &res);
    let out = run(&["verify", &red, &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("failed: membership"));
}
