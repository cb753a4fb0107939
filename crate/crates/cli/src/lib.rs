//! Command-line front end for `lm-shotgun`.
//!
//! Exit codes: 0 on success, 1 on invalid input (and for `iso` on
//! non-isomorphic inputs), 2 when a check or verification does not hold.

pub mod args;
pub mod commands;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

use args::Cli;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "LM_SHOTGUN_THREADS";

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A negative verdict for `iso`.
    NotIsomorphic,
    /// A check or verification that did not hold.
    ThresholdFailed,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::NotIsomorphic => 1,
            Status::ThresholdFailed => 2,
        }
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return if code == 0 { 0 } else { 1 };
        }
    };
    let mut problems = cli.command.validate();
    if let Err(msg) = configure_threads() {
        problems.push(msg);
    }
    if !problems.is_empty() {
        for p in &problems {
            eprintln!("error: {p}");
        }
        return 1;
    }
    match commands::execute(&cli) {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {value:?}"))?;
    // A pool may already exist when `run` is called twice in one process.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}
