use std::process::{Command, Output};

use serde_json::Value;

fn odepoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_odepoly")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = odepoly(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn fuchs_json_for_cubic_slope() {
    let v = json(&["analyze", "x*y'^3 + y*y' - 1 = 0", "--check", "fuchs", "--format", "json"]);
    let verdicts: Vec<&str> =
        v["checks"]["fuchs"]["conditions"].as_array().unwrap().iter().map(|c| c["verdict"].as_str().unwrap()).collect();
    assert_eq!(verdicts, ["pass", "pass", "fail", "skipped"]);
    for key in ["equation", "order", "singular_points", "polygon", "movable", "checks", "series", "meta"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["meta"]["seed"], 42);
}

#[test]
fn series_at_one() {
    let v = json(&["analyze", "x*y'^3 + y*y' - 1 = 0", "--series", "5", "--point", "1", "--format", "json"]);
    let exact: Vec<&Value> = v["series"]["branches"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|b| b["expansions"].as_array().unwrap())
        .filter(|e| e["terms"][0]["coefficient"].is_string())
        .collect();
    assert_eq!(exact.len(), 1);
    let coeffs: Vec<&str> = exact[0]["terms"].as_array().unwrap().iter().map(|t| t["coefficient"].as_str().unwrap()).collect();
    assert_eq!(&coeffs[..2], ["1", "-1/3"]);
}

#[test]
fn svg_is_well_formed() {
    let out = odepoly(&["analyze", "y''^2 = y^4 + 1", "--format", "svg"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("well-formed SVG");
    let circles = doc.descendants().filter(|n| n.has_tag_name("circle")).count();
    assert_eq!(circles, 3);
    assert!(doc.descendants().any(|n| n.has_tag_name("polyline")));
    assert!(doc.root_element().attribute("viewBox").is_some());
}

#[test]
fn text_output_mentions_equation() {
    let out = odepoly(&["analyze", "y' + y^2 = 0"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("y' + y^2 = 0"));
}

#[test]
fn exit_codes() {
    assert_eq!(odepoly(&["analyze", "y' = y"]).status.code(), Some(0));
    let parse = odepoly(&["analyze", "y''' +"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("1:6"));
    assert_eq!(odepoly(&["analyze", "y' = y", "--check", "nonsense"]).status.code(), Some(2));
    assert_eq!(odepoly(&["analyze", "x*y'^3 + y*y' - 1 = 0", "--point", "0"]).status.code(), Some(3));
    assert_eq!(odepoly(&["analyze", "y'' = y", "--check", "fuchs"]).status.code(), Some(3));
}

#[test]
fn all_checks_tolerate_higher_order() {
    let v = json(&["analyze", "y'' = y^2", "--check", "all", "--format", "json"]);
    assert_eq!(v["checks"]["fuchs"]["applicable"], false);
    assert_eq!(v["checks"]["elliptic"]["holds"], true);
}

#[test]
fn painleve_pole_series_at_coefficient_zero() {
    let v = json(&["analyze", "y'' - 6*y^2 - x = 0", "--point", "0", "--series", "7", "--format", "json"]);
    let b = &v["series"]["branches"][0];
    assert_eq!(b["lambda"], "-2");
    let terms = b["expansions"][0]["terms"].as_array().unwrap();
    assert!(terms.iter().any(|t| t["exponent"] == "3" && t["coefficient"] == "-1/6"));
}

#[test]
fn corpus_filter() {
    let dir = odepoly::corpus::default_dir();
    let out = Command::new(env!("CARGO_BIN_EXE_odepoly"))
        .args(["corpus", "run", "--filter", "triangle_*", "--dir"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.lines().filter(|l| l.starts_with("ok ")).count(), 6);
}
