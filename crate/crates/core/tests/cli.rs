use std::process::Command;

use gme2::group::ClassRecord;
use gme2::quiver::McKayQuiver;
use gme2::sodverify::SodReport;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gme2")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn tensor_example() {
    let (code, out, _) = run(&["tensor", "--m", "6", "--e", "3", "rho(x)", "chi(xy)"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "rho(x^2 y)");
}

#[test]
fn class_table_json_round_trips() {
    let (code, out, _) = run(&["classes", "--m", "4", "--e", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let records: Vec<ClassRecord> = serde_json::from_str(&out).unwrap();
    assert_eq!(records.len(), 10);
    assert_eq!(serde_json::to_string_pretty(&records).unwrap() + "\n", out);
}

#[test]
fn quiver_json_round_trips() {
    let (code, out, _) = run(&["quiver", "--m", "6", "--e", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let q = McKayQuiver::from_json(&out).unwrap();
    assert_eq!(q.to_json() + "\n", out);
    let (_, dot, _) = run(&["quiver", "--m", "6", "--e", "2", "--format", "dot"]);
    assert_eq!(dot, q.to_dot());
}

#[test]
fn sod_report_round_trips() {
    let (code, out, _) = run(&["sod-verify", "--m", "6", "--e", "3", "--json"]);
    assert_eq!(code, 0);
    let r = SodReport::from_json(&out).unwrap();
    assert!(r.passed);
    assert_eq!((r.counts.pieces, r.counts.exceptional_length), (9, 6));
    assert_eq!(r.to_json() + "\n", out);
}

#[test]
fn sod_verify_text() {
    let (code, out, _) = run(&["sod-verify", "--m", "4", "--e", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("[PASS]").count(), 7);
    assert!(out.contains("classes 10, pieces 10"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["tensor", "--m", "6", "--e", "3", "rho(q)", "chi(1)"]).0, 2);
    assert_eq!(run(&["classes", "--m", "6", "--e", "4"]).0, 2);
    assert_eq!(run(&["classes", "--m", "6", "--e", "3", "--format", "dot"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["sod-verify", "--m", "5", "--e", "1"]).0, 2);
    let (code, _, err) = run(&["tensor", "--m", "6", "--e", "3", "rho(x^3 y^3)", "chi(1)"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn ext_accepts_f_sheaves() {
    let (code, out, _) = run(&["ext", "--m", "6", "--e", "2", "F(x)", "rho(x^2)", "--format", "json"]);
    assert_eq!(code, 0);
    let e: gme2::extcalc::ExtProfile = serde_json::from_str(&out).unwrap();
    assert_eq!((e.d0, e.d1, e.d2), (0, 1, 0));
}

#[test]
fn in_process_run_matches_binary() {
    let args = ["gme2", "irreps", "--m", "8", "--e", "4", "--format", "csv"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(gme2::cli::run(args, &mut out, &mut err), 0);
    assert_eq!(String::from_utf8(out).unwrap(), run(&args[1..]).1);
}
