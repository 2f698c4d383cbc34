use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use minertia::bounds::{BoundReport, SurfaceRecord};
use minertia::degree::DegreeRecord;
use minertia::search::{GrowReport, SearchReport};
use minertia::selfcheck::CheckReport;
use minertia::strata::Classification;
use minertia::Inertia;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minertia")).args(args).output().expect("spawn minertia")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    assert_eq!(code(out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.ends_with('\n'));
    serde_json::from_str(&text).unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_str().unwrap().to_owned()
}

fn entry(re: &str, im: &str) -> Value {
    serde_json::json!({"re": re, "im": im})
}

#[test]
fn degree_of_q5() {
    let v = stdout_json(&run(&["degree", "--q", "5"]));
    assert_eq!(v["degree"], "175");
    assert_eq!(v["is_odd"], true);
    assert_eq!(v["k"], 2);
}

#[test]
fn degree_csv_table() {
    let out = run(&["--format", "csv", "degree", "--table", "3..5", "--parity-only"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "q,degree,v2,is_odd,q_is_2k_plus_1");
    assert_eq!(lines[1], "3,omitted,0,true,true");
    assert_eq!(lines[2], "4,omitted,2,false,false");
    assert_eq!(lines.len(), 4);
}

#[test]
fn bound_q5_without_pencils() {
    let v = stdout_json(&run(&["bound", "--q", "5", "--no-irregular-pencils"]));
    assert_eq!(v["best"], 17);
}

#[test]
fn bound_range_is_an_array() {
    let v = stdout_json(&run(&["bound", "--range", "3..7", "--no-irregular-pencils"]));
    let best: Vec<_> = v.as_array().unwrap().iter().map(|r| r["best"].as_i64().unwrap()).collect();
    assert_eq!(best, [9, 10, 17, 17, 20]);
}

#[test]
fn non_hermitian_matrix_is_rejected_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let m = serde_json::json!({"q": 2, "entries": [
        [entry("1", "0"), entry("1", "1")],
        [entry("1", "0"), entry("0", "0")],
    ]});
    let path = write(dir.path(), "bad.json", &m);
    let out = run(&["inertia", "--matrix", &path]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("(0,1)"), "{err}");
}

#[test]
fn malformed_and_missing_files_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("junk.json");
    fs::write(&p, "not json").unwrap();
    assert_eq!(code(&run(&["inertia", "--matrix", p.to_str().unwrap()])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["inertia", "--matrix", missing.to_str().unwrap()])), 2);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["degree"])), 1);
    assert_eq!(code(&run(&["degree", "--q", "5", "--table", "3..5"])), 1);
    assert_eq!(code(&run(&["search", "--q", "5", "--dim", "9"])), 1, "seed is mandatory");
    assert_eq!(code(&run(&["grow", "--q", "5", "--target", "3"])), 1);
    assert_eq!(code(&run(&["bound", "--q", "5", "--pencil", "fibers=1"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn out_of_range_values_exit_2() {
    assert_eq!(code(&run(&["degree", "--q", "2"])), 2);
    assert_eq!(code(&run(&["search", "--q", "5", "--dim", "26", "--seed", "1"])), 2);
}

#[test]
fn search_witness_reverifies_through_inertia() {
    let v = stdout_json(&run(&["search", "--q", "5", "--dim", "9", "--seed", "11"]));
    let w = &v["witness"];
    assert!(!w.is_null());
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "w.json", &w["element"]);
    let i = stdout_json(&run(&["inertia", "--matrix", &path]));
    assert_eq!(&i, &w["inertia"]);
    let m = i["n_plus"].as_u64().unwrap().min(i["n_minus"].as_u64().unwrap());
    assert!(m <= 1);
}

#[test]
fn search_is_reproducible_and_accepts_a_basis_file() {
    let a = run(&["search", "--q", "5", "--dim", "9", "--seed", "4", "--histogram"]);
    let b = run(&["search", "--q", "5", "--dim", "9", "--seed", "4", "--histogram", "--workers", "3"]);
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let basis = serde_json::json!({"q": 5, "basis": [{"q": 5, "entries": (0..5).map(|i| (0..5).map(|j| {
        let d = match (i, j) { (0, 0) | (1, 1) => "1", (2, 2) | (3, 3) => "-1", _ => "0" };
        if i == j { entry(d, "0") } else { entry("0", "0") }
    }).collect::<Vec<_>>()).collect::<Vec<_>>()}]});
    let path = write(dir.path(), "basis.json", &basis);
    let v = stdout_json(&run(&["search", "--basis", &path, "--seed", "1", "--histogram"]));
    assert!(v["witness"].is_null());
    assert_eq!(v["histogram"]["counts"]["2"], v["histogram"]["samples"]);
}

/// Parses `v` into `T` and checks that re-serializing gives back `v`.
fn round_trip<T: DeserializeOwned + Serialize>(v: &Value) -> T {
    let parsed: T = serde_json::from_value(v.clone()).expect("parse emitted JSON");
    assert_eq!(&serde_json::to_value(&parsed).unwrap(), v);
    parsed
}

#[test]
fn json_outputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let s = stdout_json(&run(&["search", "--q", "5", "--dim", "9", "--seed", "2", "--histogram"]));
    round_trip::<SearchReport>(&s);
    let path = write(dir.path(), "m.json", &s["witness"]["element"]);
    let i = round_trip::<Inertia>(&stdout_json(&run(&["inertia", "--matrix", &path])));
    let c = round_trip::<Classification>(&stdout_json(&run(&["classify", "--matrix", &path, "--cone"])));
    assert_eq!(c.inertia, i);

    let g = stdout_json(&run(&["grow", "--q", "4", "--target", "3", "--seed", "5", "--samples", "256"]));
    let grown = round_trip::<GrowReport>(&g);
    assert!(!grown.certified);
    let path = write(dir.path(), "grown.json", &g["basis"]);
    let again = stdout_json(&run(&["search", "--basis", &path, "--seed", "5", "--samples", "64"]));
    assert_eq!(again["dim"], grown.basis.dim());

    round_trip::<DegreeRecord>(&stdout_json(&run(&["degree", "--q", "40"])));
    round_trip::<BoundReport>(&stdout_json(&run(&["bound", "--q", "4", "--pencil", "b=2,fibers=1,3", "--pg", "4"])));
    let cat = round_trip::<Vec<SurfaceRecord>>(&stdout_json(&run(&["catalog"])));
    assert_eq!(cat.len(), 6);
    round_trip::<CheckReport>(&stdout_json(&run(&["check", "--trials", "5"])));
}

#[test]
fn check_passes() {
    let out = run(&["check", "--trials", "30"]);
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
}
