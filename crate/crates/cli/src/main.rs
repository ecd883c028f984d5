mod args;
mod output;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Roots(a) => run::roots(a),
        Command::Root(a) => run::root(a),
        Command::Refine(a) => run::refine(a),
        Command::Experiment(e) => run::experiment(e),
        Command::Bench(a) => run::bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("fproots: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
