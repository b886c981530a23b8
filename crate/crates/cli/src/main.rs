use std::process::ExitCode;

use clap::Parser;
use gcflag::{error_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(e) => {
            eprintln!("gcflag: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
