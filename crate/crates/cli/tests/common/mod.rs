#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn monty(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monty"))
        .args(args)
        .output()
        .expect("spawn monty")
}

pub fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

pub fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Golden cases: file name and arguments.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("exact_model1.json", &["exact", "--model", "model1", "--opened", "A", "--hypothesis", "C", "--format", "json"]),
    ("exact_model2.csv", &["exact", "--model", "model2", "--p", "3/4", "--opened", "A", "--hypothesis", "C", "--format", "csv"]),
    ("exact_model3.json", &["exact", "--model", "model3", "--opened", "A", "--empty", "true", "--hypothesis", "C", "--format", "json"]),
    ("simulate_model1.json", &["simulate", "--model", "model1", "--strategy", "always-switch", "-n", "100000", "--seed", "42", "--format", "json"]),
    ("simulate_model3_loss.csv", &["simulate", "--model", "model3", "--strategy", "always-switch", "-n", "10", "--seed", "1", "--void-semantics", "count-as-loss", "--format", "csv"]),
    ("sweep_posterior.csv", &["sweep", "--quantity", "posterior", "--from", "0", "--to", "1", "--steps", "10", "--format", "csv"]),
    ("sweep_expected_win.json", &["sweep", "--quantity", "expected-win", "--strategy", "switch-iff-a", "--steps", "2", "--format", "json"]),
    ("sweep_expected_win.csv", &["sweep", "--quantity", "expected-win", "--steps", "4", "--format", "csv"]),
    ("compare_model2.json", &["compare", "--model", "model2", "--p", "9/10", "--strategy", "switch-iff-a", "-n", "100000", "--seed", "7", "--shards", "3", "--format", "json"]),
    ("compare_model1.csv", &["compare", "--model", "model1", "--strategy", "always-stay", "-n", "100000", "--seed", "7", "--format", "csv"]),
];

/// Runs one golden case; `MONTY_UPDATE_GOLDEN=1` rewrites the file instead.
pub fn check_golden(name: &str, args: &[&str]) -> Result<(), String> {
    let output = monty(args);
    if code(&output) != 0 {
        return Err(format!("{name}: exit {}", code(&output)));
    }
    let actual = stdout(&output);
    let path = golden_path(name);
    if std::env::var_os("MONTY_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &actual).unwrap();
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{name}: {e}"))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{name}: output differs\n--- expected\n{expected}\n--- actual\n{actual}"))
    }
}

/// (arguments, expected exit code)
pub const EXIT_MATRIX: &[(&[&str], i32)] = &[
    (&["exact", "--model", "model1", "--opened", "A", "--hypothesis", "C"], 0),
    (&["compare", "--model", "model1", "--strategy", "always-stay", "-n", "1", "--seed", "0"], 1),
    (&["exact", "--model", "model1", "--opened", "B", "--hypothesis", "C"], 2),
    (&["exact", "--model", "model2", "--opened", "A", "--hypothesis", "C"], 2),
    (&["exact", "--model", "model2", "--p", "3/2", "--opened", "A", "--hypothesis", "C"], 2),
    (&["exact", "--model", "model1", "--p", "1/2", "--opened", "A", "--hypothesis", "C"], 2),
    (&["simulate", "--model", "model1", "--strategy", "sometimes", "-n", "10"], 2),
    (&["simulate", "--model", "model1", "--strategy", "always-stay", "-n", "0"], 2),
    (&["simulate", "--model", "model1", "--strategy", "always-stay", "-n", "10", "--shards", "0"], 2),
    (&["sweep", "--from", "3/4", "--to", "1/4"], 2),
    (&["sweep", "--from", "0", "--to", "2"], 2),
    (&["sweep", "--steps", "0"], 2),
    (&["sweep", "--format", "xml"], 2),
    (&["play", "--model", "model1"], 2),
    (&["exact", "--model", "model1", "--opened", "A", "--empty", "false", "--hypothesis", "A"], 3),
    (&["exact", "--model", "model2", "--p", "1", "--opened", "C", "--empty", "false", "--hypothesis", "C"], 3),
];
