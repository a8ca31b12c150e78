//! `ddi` — inference and reconstruction of qubit measurements from bare
//! outcome statistics.
//!
//! Exit codes: 0 success, 2 malformed input or schema violation, 3 row-sum
//! violation, 4 solver failure, 5 range inversion rejected the data.

mod args;
mod commands;
mod io;
mod plot;
mod schema;

use clap::Parser;

use args::{Cli, Command};

/// Error carrying its process exit code.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: String) -> Self {
        CliError { code: 2, message }
    }

    pub fn row_sum(message: String) -> Self {
        CliError { code: 3, message }
    }

    pub fn solver(message: String) -> Self {
        CliError { code: 4, message }
    }

    pub fn inversion(message: String) -> Self {
        CliError { code: 5, message }
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Infer(a) => commands::cmd_infer(a),
        Command::Reconstruct(a) => commands::cmd_reconstruct(a),
        Command::Simulate(a) => commands::cmd_simulate(a),
        Command::Check(a) => commands::cmd_check(a),
        Command::Equiv(a) => commands::cmd_equiv(a),
        Command::DemoNonunique(a) => commands::cmd_demo_nonunique(a),
    };
    if let Err(e) = result {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}
