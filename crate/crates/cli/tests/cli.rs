use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("blx").chain(args.iter().copied());
    let code = blx_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn mult_on_cox() {
    let v = json(&["mult", &fixture("fromcox.poly"), "--seed", "0"]);
    assert_eq!(v["schema"], "blx/1");
    assert_eq!(v["mult_total"], 4);
    assert_eq!(v["deg"], 3);
    assert_eq!(v["base_points"][0]["point"], serde_json::json!([0, 0, 1]));
    assert!(v["sources"]["mult_total"].is_string());
    let w = json(&["mult", &fixture("fromcox.poly"), "--path", "w"]);
    assert_eq!(w["mult_total"], 4);
    assert_eq!(w["path"], "W");
}

#[test]
fn degree_formula_with_metadata() {
    let v = json(&["mult", &fixture("fromcox.poly"), "--degmap", "1"]);
    assert_eq!(v["degree_formula"]["surface_degree"], 5);
    assert_eq!(v["degree_formula"]["formula_holds"], true);
    let q = json(&["mult", &fixture("quadric.poly")]);
    assert_eq!(q["mult_total"], 0);
    assert_eq!(q["degree_formula"]["degmap"], 2);
    assert_eq!(q["degree_formula"]["formula_holds"], true);
}

#[test]
fn planemap_on_cremona() {
    let v = json(&["planemap", &fixture("cremona.poly")]);
    assert_eq!(
        (&v["deg"], &v["mult"], &v["degmap"], &v["birational"]),
        (&2.into(), &3.into(), &1.into(), &true.into())
    );
    assert_eq!(v["base_points"].as_array().unwrap().len(), 3);
    let sq = json(&["planemap", &fixture("squaring.poly"), "--path", "v"]);
    assert_eq!(sq["degmap"], 4);
    assert_eq!(sq["birational"], false);
}

#[test]
fn compose_reports_statements() {
    let v = json(&[
        "compose",
        &fixture("quadric.poly"),
        &fixture("cremona.poly"),
        "--degmap-q",
        "2",
        "--surfdeg-q",
        "2",
    ]);
    assert_eq!(v["mult_p"], 12);
    assert_eq!(v["rhs"], 12);
    assert_eq!(v["statements"]["agree"], true);
    assert_eq!(v["content_power"]["exponent"], 4);
}

#[test]
fn oracles() {
    let v = json(&["oracle", "hs", &fixture("fromcox.poly"), "--local-algebra"]);
    assert_eq!(v["total"], 4);
    assert_eq!(v["points"][0]["local_algebra_length"], 4);
    let v = json(&["oracle", "hs", &fixture("cremona.poly"), "--point", "1,0,0"]);
    assert_eq!(v["total"], 1);
    let v = json(&["oracle", "fiber", &fixture("squaring.poly")]);
    assert_eq!(v["fiber_count"], 4);
}

#[test]
fn text_format() {
    let (code, out, _) = run(&["planemap", &fixture("cremona.poly"), "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "degmap: 1"));
    assert!(out.lines().any(|l| l == "schema: blx/1"));
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["mult", "/nonexistent/input.poly"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
    assert_eq!(run(&["mult"]).0, 1);
    assert_eq!(run(&["--bogus"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
    // surface input where a plane map is expected
    assert_eq!(run(&["planemap", &fixture("fromcox.poly")]).0, 1);
    assert_eq!(run(&["mult", &fixture("fromcox.poly"), "--path", "j"]).0, 1);
    // composition without the required metadata
    assert_eq!(run(&["compose", &fixture("fromcox.poly"), &fixture("cremona.poly")]).0, 1);
    // a single trial with tiny coefficients cannot certify the Cremona map
    let (code, out, err) = run(&[
        "planemap",
        &fixture("cremona.poly"),
        "--coeff-bound",
        "1",
        "--trials",
        "1",
    ]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("certificate"));
}

#[test]
fn binary_is_byte_stable() {
    let bin = env!("CARGO_BIN_EXE_blx");
    let args = ["mult", &fixture("cubic.poly"), "--seed", "7"];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = Command::new(bin).args(["planemap", &fixture("cremona.poly")]).output().unwrap();
    let b = Command::new(bin).args(["planemap", &fixture("cremona.poly")]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(bin).args(["mult", "/nonexistent"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
}
