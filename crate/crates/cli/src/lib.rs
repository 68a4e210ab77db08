#![allow(clippy::type_complexity)]

//! Command-line front end for `adjx-core`: matrix files, ring and mode
//! selection, the result envelope, oracle checks and operation-count
//! benchmarks.

pub mod args;
pub mod bench;
pub mod check;
pub mod envelope;
pub mod error;
pub mod matrix_file;
pub mod run;

use args::{Cli, Command};
use error::CliError;
use run::Op;

/// Runs a parsed command and returns what it prints on success.
pub fn dispatch(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Det(a) => run::run(a, Op::Det),
        Command::Adjoint(a) => run::run(a, Op::Adjoint),
        Command::Inverse(a) => run::run(a, Op::Inverse),
        Command::Check(a) => check::check(a),
        Command::Bench(a) => bench::bench(a),
    }
}
