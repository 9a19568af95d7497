//! `graphconf`: homology of ordered configuration spaces of graphs with
//! sinks, from the command line.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(
    name = "graphconf",
    version,
    about = "Configuration spaces of graphs with sinks: cube complexes, integral homology and explicit cycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Betti numbers, torsion and Euler characteristic.
    Homology(Common),
    /// Run the built-in verification suite.
    Verify(VerifyArgs),
    /// Compare the span of enumerated basic classes with the Betti number.
    Span(SpanArgs),
    /// Check whether the homology is that of a closed orientable surface.
    SurfaceCheck(Common),
    /// Write the complex, boundary matrices, homology and basic classes.
    Export(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Named family (`star:3`, `banana:4`, `k:5`, `k33`, `circle`, `interval`,
    /// `h`, `k:a,b`) or a path to a JSON graph document.
    #[arg(long)]
    pub graph: String,
    /// Number of particles.
    #[arg(short = 'n', long = "particles")]
    pub n: usize,
    /// Comma-separated sink vertices, replacing those of the graph.
    #[arg(long)]
    pub sinks: Option<String>,
    /// Resource caps as `key=value` pairs: cells, nonzeros, parkings,
    /// classes, path, circuit.
    #[arg(long)]
    pub caps: Option<String>,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
    /// Output file (directory for `export`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpanArgs {
    #[command(flatten)]
    pub common: Common,
    /// Homological degree (1, or 2 for products of basic classes).
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only checks whose id equals or starts with this group.
    #[arg(long)]
    pub only: Option<String>,
    /// Random cases per property check.
    #[arg(long, default_value_t = 1000)]
    pub cases: usize,
    /// Seed of all randomised checks.
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Homology(c) => commands::homology(&c),
        Command::Verify(v) => commands::verify(&v),
        Command::Span(s) => commands::span(&s),
        Command::SurfaceCheck(c) => commands::surface_check(&c),
        Command::Export(c) => commands::export(&c),
    };
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Cap(_) => 3,
                CliError::Io(_) | CliError::Internal(_) => 1,
            })
        }
    }
}
