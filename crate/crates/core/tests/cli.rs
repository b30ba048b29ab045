use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equising")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn invariants_summary_and_json() {
    let o = run(&["invariants", "--poly", "x^2 + y^2"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("mu"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inv.json");
    let o = run(&["invariants", "--poly", "x*(x^2*y + t*x + 1)", "--at", "1/3", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "invariants");
    assert!(v.get("timestamp").is_none());
}

#[test]
fn input_errors_exit_with_one() {
    for args in [
        vec!["invariants", "--poly", "x y"],
        vec!["invariants", "--poly", "5"],
        vec!["invariants", "--poly", "x + t"],
        vec!["invariants", "--poly", "x^2 + z"],
        vec!["family", "--poly", "x*y + t", "--interval", "1", "0"],
        vec!["family", "--poly", "x*y + t", "--grid", "1"],
        vec!["invariants", "--poly", "x^2 + y^2", "--precision", "-1"],
        vec!["family", "--interval", "0", "1"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 1, "{:?}", args);
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"), "{:?}", args);
    }
}

#[test]
fn syntax_errors_point_at_the_column() {
    let o = run(&["invariants", "--poly", "x y"]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 1, column 3"), "{}", err);
    assert!(err.contains("  ^"), "{}", err);
}

fn family_json(poly: &str, extra: &[&str]) -> (i32, Value, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("family.json");
    let mut args = vec!["family", "--poly", poly, "--json", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = run(&args);
    let text = std::fs::read_to_string(&path).unwrap();
    (code(&o), serde_json::from_str(&text).unwrap(), text)
}

#[test]
fn exit_code_follows_verdict() {
    for (poly, expected, conclusion) in [
        ("x*(x^2*y + t*x + 1)", 0, "topologically-equivalent"),
        ("(x + t)*(x*y + 1)", 3, "hypotheses-fail"),
        ("x*(x*(y + t*x^2) + 1)", 3, "inconclusive"),
    ] {
        let (c, v, _) = family_json(poly, &["--grid", "8"]);
        assert_eq!(c, expected, "{}", poly);
        assert_eq!(v["verdict"]["conclusion"], conclusion, "{}", poly);
    }
}

#[test]
fn family_reports_are_byte_identical() {
    let (_, _, a) = family_json("(x + t)*(x*y + 1)", &["--grid", "8"]);
    let (_, _, b) = family_json("(x + t)*(x*y + 1)", &["--grid", "8"]);
    assert_eq!(a, b);
    let (_, v, _) = family_json("(x + t)*(x*y + 1)", &["--grid", "8", "--timestamp"]);
    assert!(v["timestamp"].as_str().unwrap().starts_with("unix:"));
}

#[test]
fn braid_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("braid.svg");
    let o = run(&["braid", "--poly", "(x + t)*(x*y + 1)", "--interval", "-1/2", "1", "--svg", svg.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    let pic = std::fs::read_to_string(&svg).unwrap();
    assert!(pic.starts_with("<svg"));
    assert!(pic.contains("stroke-dasharray"));
    assert!(pic.trim_end().ends_with("</svg>"));
}

#[test]
fn leading_minus_is_a_polynomial() {
    let o = run(&["invariants", "--poly", "-x^2 - y^2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("f = -x^2 - y^2"));
}

#[test]
fn sigma_lists_points_at_infinity() {
    let o = run(&["sigma", "--poly", "x^2*y^2 + x"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.contains("(0:1:0) with nu = 3"), "{}", out);
    assert!(out.contains("(1:0:0) with nu = 2"), "{}", out);
}
