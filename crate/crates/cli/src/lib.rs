//! Command-line front end for solving, verification, certification and
//! figure data.

pub mod args;
pub mod commands;
pub mod error;
pub mod exponent;
pub mod output;
pub mod report;
pub mod sweep;

use std::io::Write;

pub use args::Cli;
pub use error::{CliError, CliResult, Exit};

/// Reads `HYPERC_THREADS` and sizes the worker pool.
pub fn init_threads() -> CliResult<()> {
    match std::env::var("HYPERC_THREADS") {
        Ok(v) => {
            let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
                CliError::input(format!("HYPERC_THREADS = `{v}` is not a positive integer"))
            })?;
            hyperc_core::par::init_global_threads(n);
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    use args::Command;
    match &cli.command {
        Command::Compute(a) => commands::compute(a, out),
        Command::Sigma(a) => commands::sigma(a, out),
        Command::Verify(a) => commands::verify(a, out),
        Command::Certify(a) => commands::certify_cmd(a, out),
        Command::Sweep(a) => sweep::run(a),
        Command::Identities(a) => commands::identities(a, out),
    }
}
