use std::io::Write;
use std::process::{Command, Output, Stdio};

use kummer_core::config::{CurveId, IntersectionTable};
use kummer_field::rat;
use kummer_verify::{check_ids, emit, run_suite, run_suite_with, Construction, Format, Report, RunConfig, RunConfigError, Status, Suite};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer-verify")).args(args).output().expect("binary runs")
}

#[test]
fn equal_parameters_are_a_config_error() {
    let out = bin(&["verify", "--mode", "specialized", "--s", "2", "--t", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(RunConfig::specialized(rat(2, 1), rat(2, 1)).validate(), Err(RunConfigError::EqualParameters));
}

#[test]
fn forbidden_and_missing_parameters() {
    assert_eq!(RunConfig::specialized(rat(1, 1), rat(3, 1)).validate(), Err(RunConfigError::ForbiddenParameter("s")));
    assert_eq!(RunConfig::specialized(rat(2, 1), rat(0, 1)).validate(), Err(RunConfigError::ForbiddenParameter("t")));
    let missing = RunConfig { s: None, ..RunConfig::specialized(rat(2, 1), rat(3, 1)) };
    assert_eq!(missing.validate(), Err(RunConfigError::MissingParameters));
    assert_eq!(bin(&["verify", "--mode", "specialized", "--s", "2"]).status.code(), Some(2));
}

#[test]
fn unknown_suite_is_rejected() {
    assert_eq!(bin(&["verify", "--suites", "config,bogus"]).status.code(), Some(2));
}

#[test]
fn corrupted_table_fails() {
    let mut table = IntersectionTable::standard();
    table.set_symmetric(CurveId::E0, CurveId::c(0, 1), 0);
    let config = RunConfig::default().with_suites(&[Suite::Config, Suite::Fibration]);
    let report = run_suite_with(&config, &Construction { table, ..Construction::default() }).unwrap();
    assert_eq!(report.exit_code(), 1);
    assert!(report.failed().contains(&"config.table-invariants"));
}

#[test]
fn empty_suite_selection_passes_vacuously() {
    let report = run_suite(&RunConfig::default().with_suites(&[])).unwrap();
    assert_eq!(report.summary.total, 0);
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn json_report_round_trips() {
    let report = run_suite(&RunConfig::default().with_suites(&[Suite::Config, Suite::Cohomology])).unwrap();
    let text = emit(&report, Format::Json);
    let back: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
}

#[test]
fn text_report_has_one_line_per_check() {
    let report = run_suite(&RunConfig::default().with_suites(&[Suite::Fibration])).unwrap();
    let text = emit(&report, Format::Text);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), report.checks.len() + 1);
    assert!(lines[..lines.len() - 1].iter().all(|l| l.starts_with("PASS  fibration.")));
}

#[test]
fn specialized_run_marks_formal_r_checks() {
    let report = run_suite(&RunConfig::specialized(rat(5, 1), rat(7, 2))).unwrap();
    assert_eq!(report.exit_code(), 0, "{:?}", report.failed());
    let psi = report.get("torsor.psi-n").unwrap();
    assert_eq!(psi.witness["scope"], "symbolic-only");
    assert!(report.get("config.gram-rank").unwrap().witness.get("scope").is_none());
}

#[test]
fn every_registered_check_runs_in_full_mode() {
    let report = run_suite(&RunConfig::default()).unwrap();
    let ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, check_ids());
    assert!(report.checks.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("kummer-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = bin(&["verify", "--suites", "omega", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["pass"], 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn print_alphas_at_two_three() {
    let out = bin(&["print-alphas", "--s", "2", "--t", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(2)*w2*w3") && text.contains("(6)*w1*w3") && text.contains("(1)*w1*w2"), "{text}");
}

#[test]
fn h1_reads_group_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kummer-verify"))
        .arg("h1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    // Z/4 with theta = inversion.
    let input = r#"{"order":4,"table":[[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]],"theta":[0,3,2,1]}"#;
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "2");
}

#[test]
fn degree_cap_env_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_kummer-verify"))
        .args(["verify", "--suites", "config"])
        .env("KUMMER_MAX_DEGREE", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
