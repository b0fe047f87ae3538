//! `summab`: empirical absolute-summability checks for normal matrix means.
//!
//! Exit codes: 0 all checks pass / trend summable; 1 at least one check
//! fails / trend divergent; 2 some result inconclusive with none failing;
//! 10 scenario or input-file problem; 11 command-line usage problem;
//! 12 numerical-domain or output error.

mod error;
mod report;
mod runner;
mod scenario;

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use error::CliError;
use runner::Command;

#[derive(Parser)]
#[command(
    name = "summab",
    version,
    about = "Empirical absolute-summability checks for normal matrix means"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandLine,
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario file (flat `key = value` lines)
    #[arg(long, value_name = "PATH")]
    scenario: PathBuf,
    /// Override the scenario horizon
    #[arg(long, value_name = "N")]
    horizon: Option<usize>,
    /// Override the index exponent k
    #[arg(long, value_name = "K")]
    k: Option<f64>,
    /// Write CSV dumps of every computed series into this directory
    #[arg(long, value_name = "DIR")]
    dump: Option<PathBuf>,
    /// Also write the JSON report to this path
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Override the tail-slope tolerance of the growth witnesses
    #[arg(long, value_name = "X")]
    slope_tol: Option<f64>,
    /// Suppress the JSON report on stdout
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum CommandLine {
    /// Check the factor, weight, moment, and X-shape hypotheses
    Conditions(CommonArgs),
    /// Check the derived-matrix conditions of the general transform
    MatrixConditions(CommonArgs),
    /// Compute one summability index series and its dyadic trend
    Index(CommonArgs),
    /// Split the transform differences into the four boundary terms
    Decompose(CommonArgs),
    /// Full gate: hypotheses, conclusions, factored index, decomposition
    Theorem(CommonArgs),
    /// Cross-check the matrix route against the dedicated index routes
    Reduce(CommonArgs),
}

impl CommandLine {
    fn split(&self) -> (Command, &CommonArgs) {
        match self {
            CommandLine::Conditions(a) => (Command::Conditions, a),
            CommandLine::MatrixConditions(a) => (Command::MatrixConditions, a),
            CommandLine::Index(a) => (Command::Index, a),
            CommandLine::Decompose(a) => (Command::Decompose, a),
            CommandLine::Theorem(a) => (Command::Theorem, a),
            CommandLine::Reduce(a) => (Command::Reduce, a),
        }
    }
}

fn run_cli(command: Command, args: &CommonArgs) -> Result<i32, CliError> {
    let mut sc = scenario::parse_scenario(&args.scenario)?;
    let mut notes = Vec::new();
    if let Some(h) = args.horizon {
        sc.horizon = h;
        notes.push(format!("horizon overridden to {h} on the command line"));
    }
    if let Some(k) = args.k {
        sc.k = k;
        notes.push(format!("k overridden to {k} on the command line"));
    }
    if let Some(s) = args.slope_tol {
        sc.tol.slope_tol = s;
        notes.push(format!("slope_tol overridden to {s} on the command line"));
    }
    scenario::validate(&sc, &args.scenario)?;

    let (report, code) = runner::run(&sc, command, args.dump.as_deref(), notes)?;
    let json = report.to_json();
    if !args.quiet {
        print!("{json}");
    }
    if let Some(path) = &args.json {
        std::fs::write(path, &json).map_err(|e| CliError::output(path, e))?;
    }
    Ok(code)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 11,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let (command, args) = cli.command.split();
    match run_cli(command, args) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
