//! Binary entry point: parse, dispatch, map the outcome to an exit code.
//! 0 = all checks passed, 1 = a check failed, 2 = usage error (clap uses
//! the same code for flag errors).

mod args;
mod commands;
mod grammar;
mod report;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    let code = match commands::dispatch(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}
