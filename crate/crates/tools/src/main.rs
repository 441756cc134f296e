use std::process::ExitCode;

use clap::Parser;
use segal_tools::cli::{run, Cli};

fn main() -> ExitCode {
    ExitCode::from(run(&Cli::parse()))
}
