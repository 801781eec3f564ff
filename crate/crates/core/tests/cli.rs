//! End-to-end tests of the `umbral` binary.

use std::fs;
use std::path::Path;
use std::process::Command;

use umbral::cli::{format_spec, parse_spec};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn umbral(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_umbral")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.tsv"));
    fs::read_to_string(path).unwrap()
}

fn write_spec(dir: &tempfile::TempDir, text: &str) -> String {
    let path = dir.path().join("seq.spec");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn golden_tables() {
    for family in ["bernoulli", "euler", "hermite"] {
        let r = umbral(&["table", "--family", family, "--nmax", "8"]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(r.stdout, golden(family), "{family}");
    }
}

#[test]
fn every_route_writes_the_same_table() {
    let reference = golden("euler");
    for route in ["egf", "recurrence", "delta_expansion"] {
        let r = umbral(&["table", "--family", "euler", "--nmax", "8", "--route", route]);
        assert_eq!(r.code, 0);
        assert_eq!(r.stdout, reference, "{route}");
    }
    let r = umbral(&["table", "--family", "euler", "--nmax", "8", "--all-routes"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.lines().all(|l| l.ends_with("\tagree")), "{}", r.stdout);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hermite.tsv");
    let r = umbral(&["table", "--family", "hermite", "--nmax", "8", "--out", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    assert_eq!(fs::read_to_string(path).unwrap(), golden("hermite"));
}

#[test]
fn spec_file_reproduces_the_family() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "# Bernoulli from the uniform law\nsequence bern\ndelta = derivative\nfunctional = uniform01\nnmax = 8\n");
    let r = umbral(&["table", "--spec", &spec]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, golden("bernoulli"));

    let r = umbral(&["check", "--spec", &spec]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    // the moments are recognised as those of the Bernoulli functional
    assert!(r.stdout.lines().any(|l| l == "equivalent\tpass\tfamily(bernoulli)"), "{}", r.stdout);
}

#[test]
fn non_appell_spec() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "sequence odd\ndelta = series [1, 2]\nfunctional = translate(uniform01, -1/2)\nnmax = 7\n");
    let r = umbral(&["table", "--spec", &spec, "--all-routes"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.lines().count(), 8);
    assert!(r.stdout.lines().all(|l| l.ends_with("\tagree")));
    let r = umbral(&["check", "--spec", &spec]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.lines().all(|l| l.split('\t').nth(1) == Some("pass")));
    assert!(r.stdout.starts_with("route_agreement\tpass\tegf,recurrence\n"), "{}", r.stdout);
}

#[test]
fn check_reports_identities() {
    let r = umbral(&["check", "--family", "apostol_euler", "--beta", "1/3", "--nmax", "8"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    let ids: Vec<&str> = r.stdout.lines().map(|l| l.split('\t').next().unwrap()).collect();
    for id in ["route_agreement", "lowering", "operator", "biorthogonality", "indicator"] {
        assert!(ids.contains(&id), "{id} missing from\n{}", r.stdout);
    }
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "sequence x\ndelta = derivative\nfunctional = eval(1/)\nnmax = 3\n");
    let r = umbral(&["table", "--spec", &spec]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3, column 19"), "{}", r.stderr);
    assert!(r.stdout.is_empty());

    let spec = write_spec(&dir, "sequence x\ndelta = derivative\nfunctional = mix(1*eval(0) + -1*eval(1))\nnmax = 3\n");
    let r = umbral(&["check", "--spec", &spec]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("invalid spec"), "{}", r.stderr);
}

#[test]
fn invalid_invocations_exit_2() {
    let cases: &[&[&str]] = &[
        &["table"],
        &["table", "--family", "nonesuch"],
        &["table", "--family", "bernoulli", "--route", "sideways"],
        &["table", "--family", "laguerre", "--alpha", "-1"],
        &["table", "--spec", "/nonexistent/file.spec"],
        &["check", "--family", "bernoulli", "--spec", "x.spec"],
        &["verify", "--target", "d_hermite"],
        &["verify", "--target", "weierstrass", "--tol", "-1"],
        &["frobnicate"],
    ];
    for args in cases {
        let r = umbral(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
        assert!(!r.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(umbral(&["--help"]).code, 0);
    assert_eq!(umbral(&["--version"]).code, 0);
}

#[test]
fn verify_writes_tsv_and_summary() {
    let r = umbral(&["verify", "--target", "accelerator_moments", "--d", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("check_id\tparams\texact\tquadrature\tabs_err\ttol\tpass\tevaluations"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|l| l.split('\t').nth(6) == Some("true")));
    assert!(r.stderr.contains("0 failed"), "{}", r.stderr);
}

#[test]
fn unattainable_tolerance_exits_1() {
    let r = umbral(&["verify", "--target", "euler_rep", "--tol", "1e-17"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("worst offender"), "{}", r.stderr);
    assert!(r.stdout.lines().skip(1).any(|l| l.split('\t').nth(6) == Some("false")));
}

#[test]
fn spec_text_round_trips() {
    let text = "sequence s\ndelta = difference h=1/2\nfunctional = conv(uniform01, eval(1/3))\nnmax = 6\ntruncation = 11\n";
    let once = format_spec(&parse_spec(text).unwrap());
    assert_eq!(format_spec(&parse_spec(&once).unwrap()), once);
    assert!(once.contains("delta = difference h=1/2"), "{once}");
    assert!(once.contains("truncation = 11"), "{once}");
}
