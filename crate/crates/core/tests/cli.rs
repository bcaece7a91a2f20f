mod common;

use std::path::Path;

use common::example_path;
use perfect_secrecy::cli::run;
use perfect_secrecy::{parse_instance, parse_scheme};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn cli(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("perfect-secrecy").chain(args.iter().copied());
    let status = run(argv, &mut out, &mut err);
    Run { code: status.code(), out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_reports_column_sums() {
    let r = cli(&["check", &example_path("otp2.inst")]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("column sums: 1 1"), "{}", r.out);

    let r = cli(&["check", &example_path("skewed.inst")]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("violation at y1: column sum 3/2"), "{}", r.out);
}

#[test]
fn check_json_keeps_rationals_exact() {
    let r = cli(&["--json", "check", &example_path("skewed.inst")]);
    assert_eq!(r.code, 1);
    let doc: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(doc["feasible"], false);
    assert_eq!(doc["column_sums"][0], "3/2");
    assert_eq!(doc["column_sums"][1], "1/2");
    assert_eq!(doc["violations"][0], 0);
}

#[test]
fn build_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let scheme = dir.path().join("corr23.scheme");
    let inst = example_path("corr23.inst");
    let r = cli(&["build", &inst, "-o", path(&scheme)]);
    assert_eq!(r.code, 0, "{}", r.err);
    let text = std::fs::read_to_string(&scheme).unwrap();
    assert_eq!(text, "SCHEME v1\n2 3 2\nx1 x2\ny1 y2 y3\n1/2 1/2\nz1 1/2 1 2 3\nz2 1/2 2 3 1\n");

    let r = cli(&["verify", path(&scheme), "--against", &inst]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    assert!(r.out.contains("secrecy: pass"));

    let r = cli(&["--json", "verify", path(&scheme), "--against", &inst]);
    let doc: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["marginals"]["q_z"], serde_json::json!(["1/2", "1/2"]));
}

#[test]
fn verify_against_wrong_prior_fails() {
    let dir = tempfile::tempdir().unwrap();
    let scheme = dir.path().join("otp.scheme");
    assert_eq!(cli(&["build", &example_path("otp2.inst"), "-o", path(&scheme)]).code, 0);
    let other = dir.path().join("other.inst");
    std::fs::write(&other, "INSTANCE v1\n2 2\nx1 x2\ny1 y2\n1/2 0\n0 1/2\n").unwrap();
    let r = cli(&["verify", path(&scheme), "--against", path(&other)]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("consistency: FAIL"), "{}", r.out);
}

#[test]
fn build_refuses_infeasible() {
    let r = cli(&["build", &example_path("skewed.inst")]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("3/2"), "{}", r.err);
}

#[test]
fn encode_and_decode() {
    let dir = tempfile::tempdir().unwrap();
    let scheme = dir.path().join("corr23.scheme");
    assert_eq!(cli(&["build", &example_path("corr23.inst"), "-o", path(&scheme)]).code, 0);
    let s = path(&scheme);

    let first = cli(&["encode", s, "--x", "x1", "--y", "y2", "--seed", "11"]);
    assert_eq!(first.code, 0, "{}", first.err);
    // (x1, y2) is sent only under the cycle, z2.
    assert_eq!(first.out.trim(), "z2");
    let again = cli(&["encode", s, "--x", "x1", "--y", "y2", "--seed", "11"]);
    assert_eq!(first.out, again.out);

    let r = cli(&["decode", s, "--y", "y2", "--z", "z1"]);
    assert_eq!((r.code, r.out.trim()), (0, "x2"));
    let r = cli(&["decode", s, "--y", "y3", "--z", "z1"]);
    assert_eq!(r.code, 1);
    let r = cli(&["decode", s, "--y", "y9", "--z", "z1"]);
    assert_eq!(r.code, 2);
    let r = cli(&["encode", s, "--x", "x1", "--y", "y3", "--seed", "1"]);
    assert_eq!(r.code, 1, "(x1, y3) has no mass");
}

#[test]
fn encode_requires_seed() {
    let r = cli(&["encode", &example_path("otp2.inst"), "--x", "x1", "--y", "y1"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("--seed"));
}

#[test]
fn simulate_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let scheme = dir.path().join("otp.scheme");
    assert_eq!(cli(&["build", &example_path("otp2.inst"), "-o", path(&scheme)]).code, 0);
    let args = ["--json", "simulate", path(&scheme), "-n", "20000", "--seed", "5"];
    let a = cli(&args);
    assert_eq!(a.code, 0, "{}", a.err);
    let mut sharded = args.to_vec();
    sharded.extend(["--workers", "3"]);
    let b = cli(&sharded);
    assert_eq!(a.out, b.out);
    let doc: serde_json::Value = serde_json::from_str(&a.out).unwrap();
    assert_eq!(doc["decode_success"], 1.0);
    assert_eq!(doc["samples"], 20000);
}

#[test]
fn oracle_and_cap() {
    let r = cli(&["oracle", &example_path("corr23.inst")]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("feasible"));
    assert_eq!(cli(&["oracle", &example_path("skewed.inst")]).code, 1);

    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.inst");
    assert_eq!(cli(&["shannon", "-n", "1", "-m", "7", "-o", path(&big)]).code, 0);
    assert_eq!(cli(&["oracle", path(&big)]).code, 3);
}

#[test]
fn shannon_instances() {
    let r = cli(&["shannon", "-n", "2", "-m", "2"]);
    assert_eq!(r.code, 0);
    let inst = parse_instance(&r.out).unwrap();
    assert_eq!(inst, parse_instance(&std::fs::read_to_string(example_path("otp2.inst")).unwrap()).unwrap());

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("s.inst");
    assert_eq!(cli(&["shannon", "-n", "3", "-m", "2", "-o", path(&f)]).code, 0);
    assert_eq!(cli(&["check", path(&f)]).code, 1);
    assert_eq!(cli(&["shannon", "-n", "2", "-m", "4", "-o", path(&f)]).code, 0);
    let r = cli(&["check", path(&f)]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("column sums: 1/2 1/2 1/2 1/2"), "{}", r.out);
    assert_eq!(cli(&["shannon", "-n", "0", "-m", "2"]).code, 2);
}

#[test]
fn deterministic_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("det.scheme");
    let r = cli(&["deterministic", &example_path("corr23.inst"), "-o", path(&out)]);
    assert_eq!(r.code, 0, "{}", r.err);
    let s = parse_scheme(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(s.p(), 2);

    let r = cli(&["deterministic", &example_path("no_deterministic.inst")]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("none found"));

    let r = cli(&["--json", "deterministic", &example_path("corr23.inst"), "--limit", "1"]);
    assert_eq!(r.code, 3);
    let doc: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(doc["outcome"]["status"], "budget_exhausted");
}

#[test]
fn input_errors() {
    assert_eq!(cli(&[]).code, 2);
    let r = cli(&["frobnicate"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("Usage"));
    assert_eq!(cli(&["check", "/nonexistent/file.inst"]).code, 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.inst");
    std::fs::write(&bad, "INSTANCE v1\n1 2\nx1\ny1 y2\n1/2 1/3\n").unwrap();
    let r = cli(&["check", path(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.err.starts_with("error:"));
}
