//! CLI plumbing: argument parsing, command dispatch, exit-code mapping.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.

pub mod args;
pub mod commands;
pub mod manifest;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

/// Parse and run. Never panics on user input; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // clap renders help to stdout and errors (with usage) to stderr.
            let _ = err.print();
            return code;
        }
    };

    match execute(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            classify(&err)
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Prepare(args) => commands::prepare::run(args).map(|_| 0),
        Command::Train(args) => commands::train::run(args).map(|_| 0),
        Command::Evaluate(args) => commands::evaluate::run(args).map(|_| 0),
        Command::Predict(args) => commands::predict::run(args).map(|_| 0),
        Command::Gradcheck(args) => commands::gradcheck::run(args),
        Command::Synth(args) => commands::synth::run(args).map(|_| 0),
    }
}

/// Map an error chain onto the exit-code contract.
fn classify(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(core) = cause.downcast_ref::<jachai_core::Error>() {
            return match core {
                e if e.is_numeric() => 3,
                jachai_core::Error::InvalidConfig(_) => 1,
                _ => 2,
            };
        }
    }
    2
}
