//! Library side of the `indef-embed` command: file formats, subcommands,
//! and exit codes.
//!
//! Exit codes: 0 success, 2 solver failure, 3 parse or input error
//! (including bad usage), 4 verification failure.

use std::io::Write;

use clap::{Parser, Subcommand};

pub mod bench;
pub mod commands;
pub mod document;
pub mod error;

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "indef-embed",
    version,
    about = "Isometric embeddings of indefinite metric polyhedra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for an isometric map and write an embedding document.
    Embed(commands::EmbedArgs),
    /// Check an embedding document against a complex document.
    Verify(commands::VerifyArgs),
    /// Report the Gram-form inertia of every simplex.
    Classify(commands::ClassifyArgs),
    /// Lower bound on the target signature from clique Gram forms.
    Obstruct(commands::ObstructArgs),
    /// Complex statistics and the target dimension of each solver.
    Info(commands::InfoArgs),
    /// Run the solvers over a generated family and emit CSV.
    Bench(bench::BenchArgs),
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Embed(a) => commands::run_embed(a, out),
        Command::Verify(a) => commands::run_verify(a, out),
        Command::Classify(a) => commands::run_classify(a, out),
        Command::Obstruct(a) => commands::run_obstruct(a, out),
        Command::Info(a) => commands::run_info(a, out),
        Command::Bench(a) => bench::run_bench(a, out),
    }
}
