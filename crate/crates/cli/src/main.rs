mod args;
mod commands;
mod format;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Result of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Finding,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<spectra_core::Error>() {
        Some(spectra_core::Error::TheoremViolation { .. } | spectra_core::Error::Structure(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Finding) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
