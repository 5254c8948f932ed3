use std::process::ExitCode;

use clap::Parser;
use triangulene_cli::{execute, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match RunConfig::from_cli(cli).and_then(|cfg| execute(&cfg)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
