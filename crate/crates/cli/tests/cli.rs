use std::process::Command;

use sigma3_cli::{run, Format, Report, RunConfig, Status, Suite};

fn config(suites: &[Suite]) -> RunConfig {
    RunConfig { jobs: 2, ..RunConfig::default() }.with_suites(suites)
}

fn strip_elapsed(mut r: Report) -> Report {
    for c in &mut r.results {
        c.elapsed_ms = 0.0;
    }
    r
}

#[test]
fn json_round_trips() {
    let report = run(&config(&[Suite::Schur, Suite::LeadingTerms])).unwrap();
    let text = report.emit(Format::Json);
    let back: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for row in v["results"].as_array().unwrap() {
        for key in ["suite", "check", "status", "witness", "elapsed_ms"] {
            assert!(row.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn summary_matches_rows() {
    let report = run(&config(&[Suite::Schur, Suite::Weights, Suite::LeadingTerms])).unwrap();
    let s = &report.summary;
    assert_eq!(s.totals.total, report.results.len());
    assert_eq!(s.totals.total, s.totals.pass + s.totals.fail + s.totals.skipped + s.totals.advisory);
    let per_suite: usize = s.suites.values().map(|c| c.total).sum();
    assert_eq!(per_suite, s.totals.total);
    assert_eq!(s.suites["leading-terms"].advisory, 1);
    assert!(report.passed());
}

#[test]
fn advisory_row_carries_both_polynomials() {
    let report = run(&config(&[Suite::LeadingTerms])).unwrap();
    let row = report.results.iter().find(|r| r.status == Status::Advisory).unwrap();
    assert!(row.witness["computed"].is_string());
    assert!(row.witness["displayed"].is_string());
    assert_ne!(row.witness["computed"], row.witness["displayed"]);
}

#[test]
fn basis_at_degree_zero_only() {
    let cfg = RunConfig { nrank: 0, ..config(&[Suite::Basis]) };
    let report = run(&cfg).unwrap();
    let ranks: Vec<_> = report.results.iter().filter(|r| r.check.starts_with("rank-")).collect();
    assert_eq!(ranks.len(), 1);
    assert_eq!(ranks[0].witness["count"], 1);
    assert_eq!(ranks[0].witness["rank"], 1);
    assert_eq!(ranks[0].status, Status::Pass);
}

#[test]
fn short_truncation_skips_head_check() {
    let cfg = RunConfig { nq: 4, ..config(&[Suite::Character]) };
    let report = run(&cfg).unwrap();
    let head = report.results.iter().find(|r| r.check == "head-q0-q8").unwrap();
    assert_eq!(head.status, Status::Skipped);
    assert!(report.passed());
}

#[test]
fn reruns_are_identical_modulo_elapsed() {
    let cfg = config(&[Suite::PoleOrders, Suite::Localform]);
    let a = strip_elapsed(run(&cfg).unwrap());
    let b = strip_elapsed(run(&RunConfig { jobs: 1, ..cfg }).unwrap());
    assert_eq!(serde_json::to_string(&a.results).unwrap(), serde_json::to_string(&b.results).unwrap());
}

#[test]
fn invalid_config_is_rejected() {
    assert!(RunConfig { nq: 0, ..RunConfig::default() }.validate().is_err());
    assert!(RunConfig { koszul_window: 1000, ..RunConfig::default() }.validate().is_err());
    assert!(RunConfig { jobs: 0, ..RunConfig::default() }.validate().is_err());
}

#[test]
fn binary_exit_codes_and_out_file() {
    let bin = env!("CARGO_BIN_EXE_sigma3-verify");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let status = Command::new(bin)
        .args(["--suite", "schur,weights", "--format", "json", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.summary.suites.len(), 2);

    let usage = Command::new(bin).args(["--nq", "0"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let unknown = Command::new(bin).args(["--suite", "nope"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(2));
    let via_env = Command::new(bin).env("SIGMA3_LOCALFORM_ORDER", "1").output().unwrap();
    assert_eq!(via_env.status.code(), Some(2));
}
