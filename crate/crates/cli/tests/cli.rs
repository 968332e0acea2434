use std::path::PathBuf;
use std::process::{Command, Output};

#[path = "../../core/tests/common/mod.rs"]
mod common;
use common::*;

fn apolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apolar")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn genus4_args(format: &'static str) -> Vec<&'static str> {
    vec![
        "reconstruct", "genus4", "--quadric", QUADRIC, "--cubic", CUBIC, "--expect", GOLDEN_Q, "--expect", GOLDEN_E,
        "--format", format,
    ]
}

fn genus3_args() -> Vec<&'static str> {
    vec!["reconstruct", "genus3", "--form", QUARTIC]
}

/// Compares with the stored file; `APOLAR_BLESS=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("APOLAR_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} differs from the stored output");
}

#[test]
fn genus4_reference_curve_matches_the_reference_model() {
    let out = apolar(&genus4_args("text"));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("expect 1: output Q = "), "{text}");
    assert!(text.contains("expect 2: output E = "), "{text}");
    assert!(text.contains("covariant c31 over Q: -44*x0*u0-17*x0*u1-25*x1*u0-17*x1*u1"), "{text}");
    assert!(text.ends_with("verdict: VERIFIED\n"));
    golden("genus4.txt", &text);
}

#[test]
fn genus4_json_is_stable() {
    let first = stdout(&apolar(&genus4_args("json")));
    let second = stdout(&apolar(&genus4_args("json")));
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["verdict"], "VERIFIED");
    assert_eq!(v["results"]["expectations"][0]["output"], "Q");
    golden("genus4.json", &first);
}

#[test]
fn genus3_reference_quartic_prints_the_lift() {
    let out = apolar(&genus3_args());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains(&format!("output lift over Q: {GOLDEN_X0_4}*x0^4")), "{text}");
    assert!(text.contains("extensions: none"));
    assert_eq!(text, stdout(&apolar(&genus3_args())));
    golden("genus3.txt", &text);
}

#[test]
fn malformed_polynomial_is_an_input_error() {
    let out = apolar(&["reconstruct", "binary-odd", "--form", "x0^5 + 2*x1^^5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["error"]["kind"], "Parse");
    assert!(v["error"]["position"].is_u64());
    assert_eq!(v["verdict"], "INPUT_ERROR");
}

#[test]
fn symmetric_curve_is_a_typed_failure() {
    let out = apolar(&["reconstruct", "genus4", "--quadric", SYMMETRIC_QUADRIC, "--cubic", SYMMETRIC_CUBIC]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("error NotIndependentAtF"));
}

#[test]
fn unknown_arguments_exit_with_input_error() {
    assert_eq!(apolar(&["reconstruct", "genus5"]).status.code(), Some(1));
    assert_eq!(apolar(&["reconstruct", "genus3", "--form", "x0^4", "--battery", "binary-5"]).status.code(), Some(1));
    assert_eq!(apolar(&["--version"]).status.code(), Some(0));
}

#[test]
fn selftest_echoes_the_seed() {
    let out = apolar(&["selftest", "quick", "--seed", "17"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("seed: 17"));
    assert!(!text.contains("dimension law"));
    assert_eq!(text, stdout(&apolar(&["selftest", "quick", "--seed", "17"])));
}
