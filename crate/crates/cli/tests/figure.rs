mod common;

use std::fs;

use common::{golden_path, su21_figure_oracle};

#[test]
fn golden_file_matches_oracle() {
    let oracle = su21_figure_oracle();
    if std::env::var_os("KTYPES_REGENERATE_GOLDEN").is_some() {
        fs::write(golden_path(), &oracle).unwrap();
    }
    let golden = fs::read_to_string(golden_path()).unwrap();
    assert_eq!(oracle, golden);
}

#[test]
fn cli_reproduces_golden_file() {
    let out = ktypes_cli::execute([
        "ktypes",
        "--no-cache",
        "figure",
        "--group",
        "su:2,1",
        "--format",
        "csv",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, fs::read_to_string(golden_path()).unwrap());
}

#[test]
fn black_dots_are_inside() {
    let golden = fs::read_to_string(golden_path()).unwrap();
    let rows: Vec<Vec<&str>> = golden
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    let black: Vec<_> = rows.iter().filter(|r| r[3] == "true").collect();
    assert_eq!(black.len(), 3);
    assert!(black.iter().all(|r| r[2] == "true"));
    assert!(rows.iter().any(|r| r[2] == "true" && r[3] == "false"));
}
