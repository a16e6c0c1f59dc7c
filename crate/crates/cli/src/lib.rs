//! Batch verification driver for `sigma3`.

pub mod checks;
pub mod config;
pub mod report;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

pub use config::{Cli, ConfigError, Format, RunConfig, Suite};
pub use report::{CheckResult, Report, Status};

/// Runs every selected check on a pool of `cfg.jobs` workers. Result order
/// follows the catalogue, not completion order.
pub fn run(cfg: &RunConfig) -> anyhow::Result<Report> {
    cfg.validate()?;
    let tasks = checks::tasks(cfg);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build()?;
    let results = pool.install(|| tasks.par_iter().map(execute).collect());
    Ok(Report::new(cfg.clone(), results))
}

fn execute(t: &checks::Task) -> CheckResult {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (t.run)())).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        checks::Outcome { status: Status::Fail, witness: json!({ "panic": msg }) }
    });
    CheckResult {
        suite: t.suite.name().to_string(),
        check: t.check.clone(),
        status: outcome.status,
        witness: outcome.witness,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}
