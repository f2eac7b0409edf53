//! `amalgam`: exit 0 on success, 1 when `verify` finds a failing case, 2 on usage or input errors.

mod args;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] amalgam_core::Error),
    #[error("{}: {1}", .0.display())]
    Io(PathBuf, std::io::Error),
    #[error("internal: {0}")]
    Internal(String),
}

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    let sink = output::Sink::resolve(cli.out.clone(), cli.format, cli.command.name());
    match commands::run(&cli.command).and_then(|o| sink.emit(&o).map(|_| o.failed)) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
