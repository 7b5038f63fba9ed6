//! End-to-end tests of the `evonim` binary: output formats, exit codes, and
//! cross-process determinism of evolution reports.

use std::path::Path;
use std::process::{Command, Output};

fn evonim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evonim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    assert!(
        output.status.success(),
        "exit {:?}, stderr: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn grundy_prints_a_single_value() {
    let out = stdout_of(&evonim(&["grundy", "--ruleset", "kayles", "--position", "5"]));
    assert_eq!(out.trim(), "4");
    let out = stdout_of(&evonim(&["grundy", "--ruleset", "ga1", "--position", "3,3,2"]));
    assert_eq!(out.trim(), "1");
}

#[test]
fn options_list_one_position_per_line() {
    let out = stdout_of(&evonim(&["options", "--ruleset", "ga2", "--position", "0000"]));
    let lines: Vec<&str> = out.lines().collect();
    assert!(!lines.is_empty());
    for line in lines {
        assert_eq!(line.len(), 4, "option {line:?} has the wrong length");
        assert!(line.chars().all(|c| c == '0' || c == '1'));
    }
}

#[test]
fn sequence_emits_csv_with_a_header() {
    let out =
        stdout_of(&evonim(&["sequence", "--ruleset", "kayles", "--family", "single-heap", "--max", "12"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,grundy");
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[1], "1,1");
    assert_eq!(lines[12], "12,4");
}

/// Full pipeline: export a dataset, evolve a formula against it, then score
/// the printed formula with `eval` and match it against the stored report.
#[test]
fn dataset_evolve_eval_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let ds = dir.path().join("ds.csv");
    let report_path = dir.path().join("report.json");

    let out = evonim(&[
        "dataset", "--ruleset", "ga2", "--heaps", "1", "--max-size", "10",
        "--out", ds.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&ds).unwrap();
    assert_eq!(csv.lines().count(), 11, "header plus ten rows");
    assert!(csv.starts_with("h,"));

    let out = evonim(&[
        "evolve", "--dataset", ds.to_str().unwrap(), "--seed", "3",
        "--report", report_path.to_str().unwrap(),
    ]);
    let formula = stdout_of(&out).trim().to_string();
    assert!(!formula.is_empty());

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["seed"], 3);
    assert!(report.get("wall_time_ms").is_none(), "stored reports omit wall time");
    let best_fitness = report["best_fitness"].as_u64().unwrap();

    let out = stdout_of(&evonim(&["eval", "--formula", &formula, "--dataset", ds.to_str().unwrap()]));
    let abs_line = out
        .lines()
        .find(|l| l.starts_with("ABS_DIFF,"))
        .unwrap_or_else(|| panic!("no ABS_DIFF row in {out:?}"));
    let scored: u64 = abs_line.split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(scored, best_fitness, "eval disagrees with the run report");
}

/// The same (seed, config, dataset) produces byte-identical stored reports
/// whatever the thread count.
#[test]
fn reports_are_byte_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let ds = dir.path().join("ds.csv");
    let out = evonim(&[
        "dataset", "--ruleset", "ga2", "--heaps", "2", "--max-size", "6",
        "--out", ds.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"population_size":300,"generations":6,"seed":11}"#).unwrap();

    let report_with = |threads: &str, name: &str| -> Vec<u8> {
        let path = dir.path().join(name);
        let out = evonim(&[
            "evolve", "--threads", threads,
            "--dataset", ds.to_str().unwrap(),
            "--config", config.to_str().unwrap(),
            "--report", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(&path).unwrap()
    };

    let single = report_with("1", "single.json");
    let multi = report_with("2", "multi.json");
    assert_eq!(single, multi);
}

#[test]
fn verify_single_check_reports_json_and_exits_zero() {
    let out = evonim(&["verify", "--check", "known-formulas"]);
    assert_eq!(out.status.code(), Some(0));
    let results: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stdout is a JSON document");
    assert_eq!(results[0]["name"], "known-formulas");
    assert_eq!(results[0]["passed"], true);
}

/// Bounds too small to witness the period make the check fail honestly,
/// which must surface as exit code 1.
#[test]
fn verify_failure_exits_one() {
    let out = evonim(&["verify", "--check", "kayles-period", "--kayles-max-n", "40"]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let results: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(results[0]["passed"], false);
}

#[test]
fn usage_and_input_errors_exit_two() {
    // Unknown enum value.
    let out = evonim(&["grundy", "--ruleset", "nope", "--position", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // Unparseable position literal.
    let out = evonim(&["grundy", "--ruleset", "ga1", "--position", "3,x"]);
    assert_eq!(out.status.code(), Some(2));
    // Missing dataset file.
    let out = evonim(&["eval", "--formula", "h", "--dataset", "/nonexistent.csv"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown verify check name.
    let out = evonim(&["verify", "--check", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_lists_every_subcommand() {
    let out = evonim(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for sub in ["grundy", "options", "sequence", "dataset", "evolve", "eval", "verify"] {
        assert!(text.contains(sub), "help is missing {sub}");
    }
    assert!(Path::new(env!("CARGO_BIN_EXE_evonim")).exists());
}
