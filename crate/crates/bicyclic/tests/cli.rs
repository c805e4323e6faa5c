//! Integration tests for the command-line binary: output content, exit
//! codes, file round-trips and the data-directory override.

use bicyclic::enumerate::{enumerate_fields, EnumerateOptions};
use bicyclic::output::{parse, Format};
use std::process::{Command, Output};

fn bicyclic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicyclic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn quad_real_prints_unit_and_group() {
    let out = bicyclic(&["quad", "real", "235"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("h = 6"));
    assert!(text.contains("class group: Z/6"));
    assert!(text.contains("46 + 3*sqrt(235) with norm 1"));
}

#[test]
fn quad_imag_prints_class_number() {
    let out = bicyclic(&["quad", "imag", "3235"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("h = 6"));
}

#[test]
fn biquad_reports_kuroda_data() {
    let out = bicyclic(&["biquad", "--", "-15", "-23"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Q(sqrt(-15), sqrt(-23))"));
    assert!(text.contains("(h1, h2, h3, q) = (2, 3, 2, 1)"));
    assert!(text.contains("h_K = 6"));
    // A presentation by one imaginary and one real subfield normalizes to
    // the same field as the corresponding imaginary pair.
    let alt = bicyclic(&["biquad", "--", "-15", "23"]);
    assert!(stdout(&alt).contains("Q(sqrt(-15), sqrt(-345))"));
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["quad", "imag", "0"][..],
        &["quad", "imag", "12"],
        &["biquad", "--", "6", "10"],
        &["appendix", "5"],
        &["verify", "9"],
    ] {
        let out = bicyclic(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn enumerate_writes_parseable_output() {
    let dir = tempfile::tempdir().unwrap();
    let expected = enumerate_fields(2, &EnumerateOptions::default()).unwrap();
    for format in ["csv", "jsonl", "md"] {
        let path = dir.path().join(format!("h2.{format}"));
        let out = bicyclic(&[
            "enumerate",
            "2",
            "--format",
            format,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "format {format}");
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = parse(&text, format.parse::<Format>().unwrap()).unwrap();
        assert_eq!(parsed, expected, "round trip through {format}");
    }
}

#[test]
fn enumerate_conditional_run_exits_1() {
    // n = 5 needs non-embedded lists; with a bound the run proceeds but is
    // flagged conditional.
    let out = bicyclic(&["enumerate", "5", "--bound", "500"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("# n=5 complete=false"));
    // Without a bound the missing lists are a hard input error.
    let out = bicyclic(&["enumerate", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_7_passes() {
    let out = bicyclic(&["verify", "7"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("277 fields verified"));
}

#[test]
fn appendix_cross_checks_embedded_list() {
    let out = bicyclic(&["appendix", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1, 2, 3, 7, 11, 19, 43, 67, 163"));
    assert!(text.contains("PASS"));
    let conditional = bicyclic(&["appendix", "5", "--bound", "500"]);
    assert!(conditional.status.success());
    assert!(stdout(&conditional).contains("conditional"));
}

#[test]
fn data_dir_override_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "appendix.tsv",
        "table11.tsv",
        "table12.tsv",
        "table13.tsv",
        "table14.tsv",
    ] {
        std::fs::write(dir.path().join(name), "junk\n").unwrap();
    }
    let out = Command::new(env!("CARGO_BIN_EXE_bicyclic"))
        .args(["appendix", "1"])
        .env("BIQUAD_DATA_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("appendix.tsv"));
}
