use std::path::PathBuf;

use ncg_cli::{run, ExitStatus, Outcome};
use serde_json::Value;

fn corpus(file: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(file).to_string_lossy().into_owned()
}

fn ncg(args: &[&str]) -> Outcome {
    run(std::iter::once("ncg").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--emit", "json"]);
    let out = ncg(&all);
    assert_eq!(out.status, ExitStatus::Ok, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(has_float),
        Value::Object(o) => o.values().any(has_float),
        _ => false,
    }
}

#[test]
fn normal_forms() {
    let out = ncg(&["nf", &corpus("toeplitz.alg"), "--expr", "y*x"]);
    assert_eq!((out.code(), out.stdout.trim()), (0, "1"));
    let v = json(&["nf", &corpus("toeplitz.alg"), "--expr", "x*y*x*y"]);
    assert_eq!(v["results"]["normal_form"], "x*y");
    assert_eq!(v["certificates"]["certified"], true);
}

#[test]
fn input_errors_exit_with_one_and_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "gen x\nrel x*z\n").unwrap();
    let out = ncg(&["nf", bad.to_str().unwrap(), "--expr", "x"]);
    assert_eq!(out.code(), 1);
    assert!(out.stderr.contains("line 2") && out.stderr.contains("column 7"), "{}", out.stderr);
    assert!(out.stdout.is_empty());

    let out = ncg(&["nf", &corpus("toeplitz.alg"), "--expr", "y*z"]);
    assert_eq!(out.code(), 1);
    assert!(out.stderr.contains('z'));
    assert_eq!(ncg(&["nf", "/nonexistent/file.alg", "--expr", "x"]).code(), 1);
    assert_eq!(ncg(&["frobnicate"]).code(), 1);
}

#[test]
fn smoothness_exit_codes() {
    let out = ncg(&["smooth", &corpus("free2.alg")]);
    assert_eq!(out.code(), 0);
    assert!(out.stdout.contains("D(Dx1) = 0"));
    let out = ncg(&["smooth", &corpus("dual.alg"), "--max-len", "6"]);
    assert_eq!(out.status, ExitStatus::Undetermined);
    assert!(out.stdout.starts_with("unknown"));
    assert_eq!(ncg(&["smooth", &corpus("kronecker2.quiver")]).code(), 0);
}

#[test]
fn free_representation_schemes_are_affine_spaces() {
    for d in 1..=3 {
        for n in 1..=3 {
            let v = json(&["repr", &corpus(&format!("free{d}.alg")), "--n", &n.to_string()]);
            let r = &v["results"];
            assert_eq!(r["ambient_dim"], d * n * n);
            assert_eq!(r["variables"].as_array().unwrap().len(), d * n * n);
            assert_eq!(r["relations"].as_array().unwrap().len(), 0);
        }
    }
}

#[test]
fn divergence_and_tangent_iso_reports() {
    let v = json(&["div", &corpus("free2.alg"), "--xi", "x1=x1*x2*x1,x2=x2^2", "--n", "3"]);
    assert_eq!(v["results"]["equal"], true);
    let v = json(&["tangent-iso", &corpus("idem.alg"), "--n", "2"]);
    assert_eq!(v["results"]["checked"], 4);
    assert!(v["results"]["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn projective_line_through_the_cli() {
    let v = json(&["nproj", "--d", "2", "--cutoffs", "2,4,6"]);
    let r = &v["results"];
    assert_eq!(r["matches_quiver"], true);
    assert_eq!(r["k0"]["det"], 1);
    assert_eq!(r["quiver_tables"]["hom"], serde_json::json!([[1, 2], [0, 1]]));
    assert!(!has_float(&v));
}

#[test]
fn reports_are_reproducible_without_timing() {
    let args = ["drh", &corpus("kk.alg"), "--deg", "2", "--emit", "json"];
    let (a, b) = (ncg(&args), ncg(&args));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert!(v.get("wall_time_ms").is_none());
    assert!(!has_float(&v));
}
