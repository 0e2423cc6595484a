mod args;
mod commands;
mod config;
mod error;
mod manifest;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::error::CliError;

fn run() -> Result<(), CliError> {
    let argv = config::expand_config(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Help and version requests are not failures.
            return if e.use_stderr() { Err(CliError::Usage(String::new())) } else { Ok(()) };
        }
    };
    let artifacts = commands::run(cli.command)?;
    commands::publish(&artifacts)
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string();
            if !msg.is_empty() {
                eprintln!("qwalk: error: {msg}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
