use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{Format, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// Mismatch against a reference value that is known to be unreliable; not a failure.
    Advisory,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Advisory => "advisory",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub check: String,
    pub status: Status,
    pub witness: Value,
    /// Wall-clock milliseconds; excluded from the determinism contract.
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub advisory: usize,
}

impl Counts {
    fn add(&mut self, s: Status) {
        self.total += 1;
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Skipped => self.skipped += 1,
            Status::Advisory => self.advisory += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    #[serde(flatten)]
    pub totals: Counts,
    pub suites: BTreeMap<String, Counts>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: RunConfig,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: RunConfig, results: Vec<CheckResult>) -> Self {
        let mut totals = Counts::default();
        let mut suites: BTreeMap<String, Counts> = BTreeMap::new();
        for r in &results {
            totals.add(r.status);
            suites.entry(r.suite.clone()).or_default().add(r.status);
        }
        Report { schema_version: SCHEMA_VERSION, config, results, summary: Summary { totals, suites } }
    }

    pub fn passed(&self) -> bool {
        self.summary.totals.fail == 0
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => self.text(),
            Format::Markdown => self.markdown(),
        }
    }

    fn summary_line(&self) -> String {
        let t = &self.summary.totals;
        format!(
            "{} checks: {} pass, {} fail, {} skipped, {} advisory",
            t.total, t.pass, t.fail, t.skipped, t.advisory
        )
    }

    fn text(&self) -> String {
        let sw = self.results.iter().map(|r| r.suite.chars().count()).max().unwrap_or(0).max(5);
        let cw = self.results.iter().map(|r| r.check.chars().count()).max().unwrap_or(0).max(5);
        let mut s = String::new();
        let _ = writeln!(s, "{:<sw$}  {:<cw$}  {:<8}  {:>10}  witness", "suite", "check", "status", "ms");
        for r in &self.results {
            let _ = writeln!(
                s,
                "{:<sw$}  {:<cw$}  {:<8}  {:>10.1}  {}",
                r.suite,
                r.check,
                r.status.as_str(),
                r.elapsed_ms,
                brief(r)
            );
        }
        s.push('\n');
        for (suite, c) in &self.summary.suites {
            let _ = writeln!(s, "{suite:<sw$}  {} pass, {} fail, {} skipped, {} advisory", c.pass, c.fail, c.skipped, c.advisory);
        }
        let _ = writeln!(s, "{}", self.summary_line());
        s
    }

    fn markdown(&self) -> String {
        let mut s = String::from("| suite | check | status | ms | witness |\n|---|---|---|---:|---|\n");
        for r in &self.results {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {:.1} | `{}` |",
                r.suite,
                r.check,
                r.status.as_str(),
                r.elapsed_ms,
                brief(r).replace('|', "\\|").replace('`', "'")
            );
        }
        s.push_str("\n| suite | pass | fail | skipped | advisory |\n|---|---:|---:|---:|---:|\n");
        for (suite, c) in &self.summary.suites {
            let _ = writeln!(s, "| {suite} | {} | {} | {} | {} |", c.pass, c.fail, c.skipped, c.advisory);
        }
        let _ = writeln!(s, "\n**{}**", self.summary_line());
        s
    }
}

/// Full witness for failures and advisories, a truncated one otherwise.
fn brief(r: &CheckResult) -> String {
    const LIMIT: usize = 100;
    let full = r.witness.to_string();
    if matches!(r.status, Status::Fail | Status::Advisory) || full.chars().count() <= LIMIT {
        full
    } else {
        let head: String = full.chars().take(LIMIT).collect();
        format!("{head}…")
    }
}
