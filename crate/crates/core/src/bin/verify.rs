//! `verify --config <path> [--suite <name>]... [--seed <int>] [--out <path>] [--parallel]`
//!
//! Exit status 0 when every check passes, 1 when one fails, 2 on a usage
//! or configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use isobessel::harness::{run, RunConfig, Suite};

#[derive(Parser, Debug)]
#[command(
    name = "verify",
    about = "Run the verification suites and write a JSONL report"
)]
struct Args {
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Restrict to these suites; repeatable.
    #[arg(long = "suite", value_enum)]
    suites: Vec<Suite>,
    /// Override the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run checks on all cores.
    #[arg(long)]
    parallel: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut config = match RunConfig::load(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    if !args.suites.is_empty() {
        config.suites = args.suites;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let report = run(&config, args.parallel);
    let text = report.to_jsonl();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("verify: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    let s = &report.summary;
    eprintln!(
        "verify: {} passed, {} failed, {} skipped of {}",
        s.passed, s.failed, s.skipped, s.total
    );
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
