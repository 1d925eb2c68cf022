//! End-to-end runs of the binary: exit codes, golden output, determinism.
//! Set `UPDATE_GOLDEN=1` to rewrite the golden files.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).display().to_string()
}

fn c5cone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_c5cone"))
        .args(args)
        .env("C5CONE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var("UPDATE_GOLDEN").is_ok_and(|v| v == "1") {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{name}");
}

#[test]
fn analyze_golden_outputs() {
    for (file, name) in [
        ("space_cusp.json", "space_cusp.analyze.txt"),
        ("four_branch.json", "four_branch.analyze.txt"),
        ("five_space_pair.json", "five_space_pair.analyze.txt"),
    ] {
        let o = c5cone(&["analyze", &fixture(file)]);
        assert_eq!(o.status.code(), Some(0));
        golden(name, &String::from_utf8(o.stdout).unwrap());
    }
    let o = c5cone(&["analyze", &fixture("space_cusp.json"), "--json"]);
    golden("space_cusp.analyze.json", &String::from_utf8(o.stdout).unwrap());
}

#[test]
fn analyze_json_lists_cone_planes() {
    let o = c5cone(&["analyze", &fixture("four_branch.json"), "--json"]);
    let r = stdout_json(&o);
    assert_eq!(r["cone"]["count"], 7);
    let eqs: Vec<&str> = r["cone"]["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["equations"][0].as_str().unwrap())
        .collect();
    assert_eq!(eqs, ["y", "y + z", "y + 2*z", "z", "y - z", "y - 2*z", "x - z"]);
    assert_eq!(r["bounds"]["bound1"], 27);
    assert_eq!(r["bounds"]["bound2"], 22);
}

#[test]
fn invalid_documents_exit_two_with_diagnostic() {
    for (file, kind) in [
        ("invalid/not_puiseux.json", "NotPuiseuxForm"),
        ("invalid/duplicate_branch.json", "DuplicateBranch"),
        ("invalid/incompatible.json", "IncompatibleSystem"),
        ("does_not_exist.json", "Io"),
    ] {
        let o = c5cone(&["analyze", &fixture(file)]);
        assert_eq!(o.status.code(), Some(2), "{file}");
        assert!(o.stdout.is_empty());
        let d: Value = serde_json::from_slice(&o.stderr).unwrap();
        assert_eq!(d["error"]["kind"], kind, "{file}");
    }
    let o = c5cone(&["project", &fixture("space_cusp.json"), "--kernel", "(0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_exit_codes() {
    let o = c5cone(&["compare", &fixture("analytic_type_1.json"), &fixture("analytic_type_2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = c5cone(&["compare", &fixture("space_cusp.json"), &fixture("space_cusp.json"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout_json(&o);
    assert_eq!(r["witness"], serde_json::json!([{"left": 1, "right": 1}]));
    let o = c5cone(&["compare", &fixture("space_cusp.json"), &fixture("family_fiber_t0.json")]);
    assert_eq!(o.status.code(), Some(1));
    let o = c5cone(&["compare", &fixture("four_branch.json"), &fixture("space_cusp.json")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn project_commands() {
    let o = c5cone(&["project", &fixture("space_cusp.json"), "--auto", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout_json(&o);
    assert_eq!(r["projection"]["text"], "(x, y + z)");
    assert_eq!(r["invariance"], true);
    let doc = c5cone_cli::document::CurveDocument::from_json(&r["projected"].to_string()).unwrap();
    let c = doc.to_curve().unwrap();
    assert_eq!(c.branch(0).param().to_string(), "(u^4, u^6 + u^7)");

    let o = c5cone(&["project", &fixture("space_cusp.json"), "--kernel", "(0,0,1)", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let r = stdout_json(&o);
    assert_eq!(r["violating"]["equations"][0], "y");

    let o = c5cone(&["project", &fixture("space_cusp.json"), "--kernel", "(0,1,-1)", "--json"]);
    assert_eq!(o.status.code(), Some(0));

    let o = c5cone(&["project", &fixture("plane_pair_x.json"), "--auto", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["projection"]["text"], "(x, y)");
}

#[test]
fn verify_is_deterministic_and_detects_corruption() {
    let args = ["verify", &fixture("space_cusp.json"), "--seed", "7", "--samples", "50", "--json"];
    let a = c5cone(&args);
    let b = c5cone(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = stdout_json(&a);
    assert_eq!(r["seed"], 7);
    assert_eq!(r["components"].as_array().unwrap().len(), 2);

    let o = c5cone(&["verify", &fixture("space_cusp.json"), "--samples", "50", "--corrupt-planes"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn thread_setting_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_c5cone"))
        .args(["analyze", &fixture("space_cusp.json")])
        .env("C5CONE_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
