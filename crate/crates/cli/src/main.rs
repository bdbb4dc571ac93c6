use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod analyze;
mod commands;
mod render;

/// Exit status contract.
#[derive(Debug)]
pub enum CliError {
    /// A check ran and found violations or mismatches.
    Failed,
    Cap(String),
    Input(String),
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed => 1,
            CliError::Cap(_) => 2,
            CliError::Input(_) => 3,
            CliError::Usage(_) => 4,
        }
    }
}

#[derive(Parser)]
#[command(name = "agelab", version, about = "Age, deviation and singularity screens for finite complex linear groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a catalog group (`catalog:NAME key=value ...`) or a group JSON file.
    Analyze(AnalyzeArgs),
    /// Run a seeded verification suite; exits 1 on any violation.
    Verify(VerifyArgs),
    /// Recompute age* and the deviation for every row of a class-spectrum dataset.
    Table1 {
        /// Dataset to check instead of the bundled one.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Inspect the group catalog.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Analyze a single spectrum given as angles `p/q` in [0, 1).
    Spectrum {
        /// Angles, separated by spaces or commas.
        #[arg(required = true, num_args = 1..)]
        angles: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// `catalog:NAME` or a path to a group JSON file.
    source: String,
    /// Catalog parameters as `key=value`.
    params: Vec<String>,
    /// Print one line per conjugacy class.
    #[arg(long)]
    per_class: bool,
    #[arg(long)]
    json: bool,
    /// Largest group order to enumerate.
    #[arg(long, default_value_t = agelab::group::DEFAULT_CAP)]
    cap: usize,
    /// Deviation budget C for the generation report (at least 4).
    #[arg(long)]
    budget: Option<f64>,
}

#[derive(Args)]
pub struct VerifyArgs {
    suite: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    max_dim: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List the catalog entries with their parameters and defaults.
    List {
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => commands::analyze(&a),
        Command::Verify(v) => commands::verify(&v),
        Command::Table1 { data, json } => commands::table1(data.as_deref(), json),
        Command::Catalog { command: CatalogCommand::List { json } } => commands::catalog_list(json),
        Command::Spectrum { angles, json } => commands::spectrum(&angles, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Failed => {}
                CliError::Cap(m) | CliError::Input(m) | CliError::Usage(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}
