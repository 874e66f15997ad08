use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = frankl_forge::cli::Cli::parse();
    ExitCode::from(frankl_forge::cli::run(cli))
}
