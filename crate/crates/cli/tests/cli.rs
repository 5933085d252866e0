mod common;

use std::io::Write;
use std::path::Path;

use common::*;
use serde_json::Value;

fn json(out: &[u8]) -> Value {
    serde_json::from_slice(out).expect("stdout is JSON")
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

const IDENTITY2: &str = "[[1, 0], [0, 0], [0, 0], [1, 0]]";

#[test]
fn analyze_strict_sl2() {
    let out = run(&["analyze", "--generate", "SL2 g=2 strict seed=7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    let d = &v["dims"];
    assert_eq!(
        (d["dim_Z1"].as_u64(), d["dim_B1"].as_u64(), d["dim_H1"].as_u64(), d["dim_schottky_tangent"].as_u64()),
        (Some(9), Some(3), Some(6), Some(3))
    );
    assert_eq!(d["matches"], true);
    assert_eq!(v["lagrangian"]["lagrangian"], true);
    assert_eq!(v["pairing"].as_array().unwrap().len(), 2);
    assert!(v.get("obstruction").is_none());
    assert!(v.get("wall_clock_ms").is_none());
}

#[test]
fn analyze_nonstrict_gl2() {
    let v = json(&run(&["analyze", "--generate", "GL2 g=2 schottky seed=3"]).stdout);
    let d = &v["dims"];
    assert_eq!(
        (d["dim_Z1"].as_u64(), d["dim_B1"].as_u64(), d["dim_H1"].as_u64(), d["dim_schottky_tangent"].as_u64()),
        (Some(13), Some(3), Some(10), Some(7))
    );
    // the Lagrangian check needs a strict rep
    assert!(v.get("lagrangian").is_none());
}

#[test]
fn analyze_psl_includes_obstruction() {
    let v = json(&run(&["analyze", "--generate", "PSL2 g=2 seed=1", "--form", "bilinear"]).stdout);
    assert_eq!(v["obstruction"]["trivial"], true);
    assert_eq!(v["pairing"].as_array().unwrap().len(), 1);
}

#[test]
fn analyze_input_file_round_trips_generation() {
    let generated = surfrep::io::rep_to_string(&surfrep::random_good_schottky::<f64>(desc("SL3"), 2, true, 11).unwrap()).unwrap();
    let f = write_temp(&generated);
    let from_file = run(&["analyze", "--input", path(&f)]);
    let from_spec = run(&["analyze", "--generate", "SL3 g=2 strict seed=11"]);
    assert_eq!(from_file.status.code(), Some(0));
    // loading recomputes the cached inverses, so floats agree only to rounding
    let (a, b) = (json(&from_file.stdout), json(&from_spec.stdout));
    assert_eq!(a["dims"], b["dims"]);
    assert_eq!(a["stabilizer"], b["stabilizer"]);
    assert_eq!(a["lagrangian"]["lagrangian"], true);
    for (p, q) in a["pairing"].as_array().unwrap().iter().zip(b["pairing"].as_array().unwrap()) {
        assert_eq!((&p["form"], &p["rank"]), (&q["form"], &q["rank"]));
    }
    assert!(a["representation"]["relator_residual"].as_f64().unwrap() < 1e-13);
}

#[test]
fn broken_relator_gives_partial_report() {
    let f = write_temp(
        r#"{"descriptor": {"family": "SL", "n": 2}, "genus": 1,
            "A": [[[2, 0], [0, 0], [0, 0], [0.5, 0]]], "B": [[[1, 0], [1, 0], [0, 0], [1, 0]]]}"#,
    );
    let out = run(&["analyze", "--input", path(&f)]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out.stdout);
    assert!(v["representation"]["relator_residual"].as_f64().unwrap() > 1.0);
    assert!(v["error"].as_str().unwrap().contains("relator"));
    assert!(v.get("dims").is_none());
    assert!(!out.stderr.is_empty());
}

#[test]
fn hermitian_form_needs_unitary_rep() {
    let f = write_temp(&format!(
        r#"{{"descriptor": {{"family": "SL", "n": 2}}, "genus": 1, "A": [{IDENTITY2}], "B": [[[2, 0], [0, 0], [0, 0], [0.5, 0]]]}}"#
    ));
    let out = run(&["analyze", "--input", path(&f), "--form", "hermitian"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out.stdout);
    assert!(v.get("dims").is_some());
    assert!(v.get("pairing").is_none());
    let out = run(&["analyze", "--input", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out.stdout)["representation"]["unitary"], false);
}

#[test]
fn input_errors_exit_one() {
    let bad = write_temp("{\"descriptor\": ");
    for args in [
        vec!["analyze", "--input", path(&bad)],
        vec!["analyze", "--input", "/nonexistent/rep.json"],
        vec!["analyze", "--generate", "SO2 g=2"],
        vec!["analyze", "--generate", "SL2 g=2", "--input", path(&bad)],
        vec!["analyze", "--generate", "SL2 g=1"],
        vec!["analyze"],
        vec!["dim-table", "--grid", "SL2"],
        vec!["dim-table", "--out", "xml"],
        vec!["obstruction", "--input", path(&bad)],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn obstruction_control_file() {
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/psl2_control.json");
    let out = run(&["obstruction", "--input", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!((v["index"].as_u64(), v["n"].as_u64(), &v["trivial"]), (Some(1), Some(2), &Value::Bool(false)));
    assert!((v["zeta"][0].as_f64().unwrap() + 1.0).abs() < 1e-15);
}

#[test]
fn obstruction_generated_schottky_is_trivial() {
    for spec in ["PSL2 g=2 strict seed=4", "PSL2 g=1 schottky seed=9", "PSL3 g=3 schottky seed=2", "SL2 g=2 seed=1"] {
        let out = run(&["obstruction", "--generate", spec]);
        assert_eq!(out.status.code(), Some(0), "{spec}");
        assert_eq!(json(&out.stdout)["trivial"], true, "{spec}");
    }
}

#[test]
fn obstruction_non_scalar_relator_exits_two() {
    // [A, B] is unipotent, not central
    let psl = write_temp(
        r#"{"descriptor": {"family": "PSL", "n": 2}, "genus": 1,
            "A": [[[2, 0], [0, 0], [0, 0], [0.5, 0]]], "B": [[[1, 0], [1, 0], [0, 0], [1, 0]]]}"#,
    );
    assert_eq!(run(&["obstruction", "--input", path(&psl)]).status.code(), Some(2));
    let sl = write_temp(
        r#"{"descriptor": {"family": "SL", "n": 2}, "genus": 1,
            "A": [[[0, 1], [0, 0], [0, 0], [0, -1]]], "B": [[[0, 0], [1, 0], [-1, 0], [0, 0]]]}"#,
    );
    assert_eq!(run(&["obstruction", "--input", path(&sl)]).status.code(), Some(2));
}

#[test]
fn dim_table_outputs() {
    let out = run(&["dim-table", "--grid", "SL2 g=2, GL2 g=2, SL2 g=1", "--seeds", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0]["components"], 4);
    assert_eq!(rows[2]["group"], "GL2");
    assert_eq!(rows[3]["observed"]["tangent"], 7);
    assert!(rows[4]["error"].is_string());
    assert_eq!(v["summary"]["agreeing"], 4);
    assert_eq!(v["summary"]["all_agree"], false);

    let csv = run(&["dim-table", "--grid", "SL2 g=2", "--seeds", "2", "--out", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("group,genus,mode,seeds,components,formula_Z1"));
    assert_eq!(lines[1], "SL2,2,strict,2,4,9,3,6,3,9,3,6,3,2,0,true,");

    let empty = run(&["dim-table", "--grid", ""]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(json(&empty.stdout)["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["analyze", "--generate", "SL3 g=2 schottky seed=5"],
        vec!["analyze", "--generate", "PSL2 g=3 seed=8"],
        vec!["dim-table", "--grid", "SL2 g=2,SL3 g=2", "--seeds", "4", "--out", "csv"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
