mod commands;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "shi", version, about = "Shi arrangements, Weyl cones and order rings")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positive roots, root poset covers and type numerology.
    Roots {
        #[arg(long = "type", value_name = "TYPE")]
        cartan_type: String,
    },
    /// Regions, ceilings, flats and Poincaré polynomial of one Weyl cone.
    Cone {
        #[arg(long = "type", value_name = "TYPE")]
        cartan_type: String,
        /// Word in the simple generators (`s`,`t` in rank 2, digits otherwise).
        #[arg(long, default_value = "")]
        word: String,
        /// Explicit root subset E of Shi(E), as comma-separated root indices,
        /// studied in the dominant cone.
        #[arg(long, value_delimiter = ',', conflicts_with = "word")]
        e: Option<Vec<usize>>,
    },
    /// Check the region, flat and interval correspondences on every cone.
    Verify {
        #[arg(long = "type", value_name = "TYPE")]
        cartan_type: String,
        #[arg(long, value_enum, default_value_t = TheoremArg::All)]
        theorem: TheoremArg,
        /// Extended arrangement parameter; values above 1 report on the
        /// dominant cone of the extended arrangement.
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Order polytope vertices, generators, standard monomials and Hilbert
    /// series of a poset file or of a full root poset.
    Orderring {
        /// Poset JSON file: {"elements": [...], "covers": [[i, j], ...]}.
        #[arg(required_unless_present = "cartan_type", conflicts_with = "cartan_type")]
        poset: Option<PathBuf>,
        #[arg(long = "type", value_name = "TYPE")]
        cartan_type: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    #[value(name = "1")]
    Regions,
    #[value(name = "2")]
    Flats,
    #[value(name = "3")]
    Intervals,
    All,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (record, passed) = match cli.command {
        Command::Roots { cartan_type } => (commands::roots(&cartan_type)?, true),
        Command::Cone { cartan_type, word, e } => (commands::cone(&cartan_type, &word, e.as_deref())?, true),
        Command::Verify { cartan_type, theorem, m } => {
            let record = commands::verify(&cartan_type, theorem, m)?;
            let passed = record.passed();
            (record, passed)
        }
        Command::Orderring { poset, cartan_type } => (
            commands::orderring(poset.as_deref(), cartan_type.as_deref())?,
            true,
        ),
    };
    let text = render::render(&record, cli.format).map_err(|e| CliError::Usage(e.to_string()))?;
    match cli.out {
        Some(path) => fs::write(&path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
