use std::path::PathBuf;
use std::process::Command;

use crown_species::cli::{cmd_enumerate, run, run_check, EnumKind, Format, Params};
use crown_species::report::{Status, VerificationReport};

fn crown(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_crown")).args(args).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

#[test]
fn verify_examples() {
    let (out, code) = crown(&["verify", "thm-3.2", "--n", "2", "--d", "4"]);
    assert_eq!(code, 0, "{out}");
    let (out, code) = crown(&["verify", "lemma-2.2", "--n", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("50 strings"));
    let (_, code) = crown(&["verify", "prop-3.13", "--m", "2", "--n", "3", "--a", "e^(1/2)", "--prec", "24"]);
    assert_eq!(code, 0);
}

#[test]
fn enumerate_examples() {
    let (out, code) = crown(&["enumerate", "strings", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 8);
    let (out, _) = crown(&["enumerate", "band", "--n", "3"]);
    assert!(out.starts_with("b1^-1 a3 b3^-1 a2 b2^-1 a1"));
    let (out, _) = crown(&["enumerate", "roots", "--n", "3"]);
    assert!(out.contains("delta = (1,1,1,1,1,1)"));
    let json = cmd_enumerate(EnumKind::Strings, 5, Format::Json).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 50);
}

#[test]
fn certify_fixtures() {
    let (out, code) = crown(&["certify", &fixture("nonhomogeneous_j2_n3.lrep")]);
    assert_eq!(code, 0, "{out}");
    let (out, code) = crown(&["certify", &fixture("homogeneous_n2_m3.lrep")]);
    assert_eq!(code, 0, "{out}");
    let (out, code) = crown(&["certify", &fixture("doubled_n2.lrep")]);
    assert_eq!(code, 1);
    assert!(out.contains("first failure: dim End"), "{out}");
}

#[test]
fn undecided_exit_code() {
    let dir = std::env::temp_dir().join(format!("crown-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("band.lrep");
    // a homogeneous form with no witness line: the string families cannot match it
    std::fs::write(&path, "lambda-rep n=2 m=3 mp=3\nA:\n0, 1, 0\n0, 0, 1\ne, 0, 0\nB:\n1, 0, 0\n0, 1, 0\n0, 0, 1\nperiod: 3\n").unwrap();
    let (_, code) = crown(&["certify", path.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn usage_errors() {
    assert_eq!(crown(&["verify", "no-such-check"]).1, 3);
    assert_eq!(crown(&["verify", "prop-3.13", "--n", "3"]).1, 3);
    assert_eq!(crown(&["frobnicate"]).1, 3);
    let (_, err, code) = run(["crown", "certify", "/nonexistent/file.lrep"]);
    assert_eq!(code, 3);
    assert!(err.contains("nonexistent"));
}

#[test]
fn json_reports_round_trip() {
    let (out, code) = crown(&["verify", "prop-3.12", "--n", "3", "--a", "e^(1/3)", "--format", "json"]);
    assert_eq!(code, 0);
    let r = VerificationReport::from_json(&out).unwrap();
    assert_eq!(r.check, "prop-3.12");
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.to_json() + "\n", out);
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_crown"))
        .args(["verify", "prop-3.13", "--m", "2", "--n", "3", "--a", "e^(1/2) + e", "--format", "json"])
        .env("CROWN_PREC", "9")
        .output()
        .unwrap();
    let r = VerificationReport::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert!(r.details.iter().any(|d| d.precision.contains("O(e^")), "{r:?}");
    let deep = Command::new(env!("CARGO_BIN_EXE_crown"))
        .args(["verify", "prop-3.13", "--m", "2", "--n", "3", "--a", "e^(1/2) + e", "--format", "json"])
        .env("CROWN_PREC", "30")
        .output()
        .unwrap();
    assert_ne!(out.stdout, deep.stdout);
}

#[test]
fn zeta_order_is_validated() {
    assert_eq!(crown(&["verify", "prop-3.13", "--m", "2", "--n", "3", "--a", "e^(1/2)", "--zeta-order", "12"]).1, 0);
    assert_eq!(crown(&["verify", "prop-3.13", "--m", "2", "--n", "3", "--a", "e^(1/2)", "--zeta-order", "4"]).1, 3);
}

#[test]
fn parallel_runs_are_ordered_and_identical() {
    let (a, code) = crown(&["verify", "all", "--jobs", "4", "--format", "json"]);
    assert_eq!(code, 0);
    let (b, _) = crown(&["verify", "all", "--jobs", "1", "--format", "json"]);
    assert_eq!(a, b);
    let reports: Vec<VerificationReport> = serde_json::from_str(&a).unwrap();
    let ids: Vec<&str> = reports.iter().map(|r| r.check.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn failing_report_names_first_failure() {
    let p = Params { n: Some(3), j: Some(2), ..Params::default() };
    let r = run_check("eq-7", &p).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert!(r.to_text().contains("first failure"));
}
