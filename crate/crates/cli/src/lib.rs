//! CLI internals for the `botscope` binary: argument surface, config
//! merging, the report-bundle manifest machinery, and the subcommand
//! implementations.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;
pub mod outputs;

use args::{Cli, Command};
use error::CliError;

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Train(args) => commands::train::run(args),
        Command::Classify(args) => commands::classify::run(args),
        Command::Analyze(args) => commands::analyze::run(*args),
        Command::GenFixture(args) => commands::gen_fixture::run(args),
        Command::ValidateBundle(args) => commands::validate::run(args),
    }
}
