//! Verification harness: suites of checks run from a [`RunConfig`] and
//! written as a JSONL [`Report`].

mod config;
mod report;
mod suites;

use std::time::Instant;

use rayon::prelude::*;

pub use config::{parse_rational, ConfigError, RunConfig, Suite};
pub use report::{CheckRecord, Report, Status, Summary, SummaryLine};
pub use suites::{checks, displayed_m_block, fmt_c, fmt_f, Check, Env, Outcome};

/// Runs the configured suites in order; with `parallel` the checks run on
/// the rayon pool but the records keep their order.
pub fn run(config: &RunConfig, parallel: bool) -> Report {
    let start = Instant::now();
    let env = Env::new(config);
    let mut suites = config.suites.clone();
    suites.dedup();
    let all: Vec<Check> = suites.iter().flat_map(|s| checks(*s, config)).collect();
    let one = |c: &Check| {
        let t = Instant::now();
        let o = c.run(&env);
        CheckRecord {
            suite: c.suite,
            check_id: c.id.clone(),
            anchor: c.anchor.clone(),
            status: o.status,
            lhs: o.lhs,
            rhs: o.rhs,
            tolerance: o.tolerance,
            runtime_ms: t.elapsed().as_secs_f64() * 1e3,
        }
    };
    let records: Vec<CheckRecord> = if parallel {
        all.par_iter().map(one).collect()
    } else {
        all.iter().map(one).collect()
    };
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    let (passed, failed, skipped) = (
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped),
    );
    let summary = Summary {
        n: config.n,
        seed: config.seed,
        suites,
        total: records.len(),
        passed,
        failed,
        skipped,
        all_pass: failed == 0,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Report { records, summary }
}
