//! `gkz`: command-line front end.
//!
//! Exit codes: 0 success, 1 user error, 2 input parse error, 3 internal
//! consistency failure.

mod commands;
mod job;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gkz_core::GkzError;

use crate::job::{parse_input, split_list, Input};
use crate::report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(GkzError),
    #[error("{0}")]
    User(String),
    #[error("input error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(_) | CliError::User(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    /// Short stable name of the failed condition.
    fn condition(&self) -> String {
        match self {
            CliError::Core(e) => format!("{e:?}")
                .split(['(', ' ', '{'])
                .next()
                .unwrap_or("Error")
                .to_string(),
            CliError::User(_) => "UserError".into(),
            CliError::Parse(_) => "ParseError".into(),
            CliError::Internal(_) => "Internal".into(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Copy, Clone, Debug, Subcommand)]
enum Verb {
    /// Lattice, facets, volume, pyramid status, resonance and rank.
    Analyze,
    /// Regular triangulation from heights, a direction, or a seeded draw.
    Triangulate,
    /// Γ-series basis attached to a triangulation.
    Series,
    /// Plain and logarithmic basis for nonresonant parameters.
    Logbasis,
    /// Applies every Euler and box operator to a supplied or built basis.
    Verify,
    /// Certified inverse of the contiguity map ∂_i.
    Contiguity,
    /// Face restriction behind a reducibility witness.
    Restrict,
}

#[derive(Debug, Parser)]
#[command(
    name = "gkz",
    version,
    about = "Exact solutions of A-hypergeometric systems"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Job or report document (JSON); standard input when absent.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true)]
    truncation: Option<i64>,
    #[arg(long = "eps-order", global = true)]
    eps_order: Option<usize>,
    /// Comma separated rationals, one per point.
    #[arg(long, global = true, allow_hyphen_values = true)]
    heights: Option<String>,
    /// Comma separated rationals, one per point.
    #[arg(long, global = true, allow_hyphen_values = true)]
    rho: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// 1-based column for `contiguity`.
    #[arg(long, global = true)]
    column: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
}

fn load(cli: &Cli) -> Result<Input, CliError> {
    let text = match &cli.input {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Parse(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    let mut input = parse_input(&text)?;
    let job = &mut input.job;
    if let Some(t) = cli.truncation {
        job.truncation = Some(t);
    }
    if let Some(e) = cli.eps_order {
        job.eps_order = Some(e);
    }
    if let Some(h) = &cli.heights {
        job.heights = Some(split_list(h));
    }
    if let Some(r) = &cli.rho {
        job.rho = Some(split_list(r));
    }
    if let Some(s) = cli.seed {
        job.seed = Some(s);
    }
    if let Some(c) = cli.column {
        job.column = Some(c);
    }
    // record the effective defaults so the report is self-contained
    job.truncation = Some(job.truncation());
    job.seed = Some(job.seed());
    Ok(input)
}

fn run(cli: &Cli) -> Result<commands::Outcome, CliError> {
    let input = load(cli)?;
    match cli.verb {
        Verb::Analyze => commands::analyze(&input),
        Verb::Triangulate => commands::triangulate(&input),
        Verb::Series => commands::series(&input),
        Verb::Logbasis => commands::logbasis(&input),
        Verb::Verify => commands::verify(&input),
        Verb::Contiguity => commands::contiguity(&input),
        Verb::Restrict => commands::restrict(&input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            match cli.format {
                Format::Human => print!("{}", o.human),
                Format::Machine => {
                    let report = Report {
                        command: o.command.to_string(),
                        job: o.job,
                        result: o.result,
                    };
                    match serde_json::to_string_pretty(&report) {
                        Ok(s) => println!("{s}"),
                        Err(e) => {
                            eprintln!("error [Internal]: {e}");
                            return ExitCode::from(3);
                        }
                    }
                }
            }
            match o.failure {
                Some(e) => {
                    eprintln!("error [{}]: {e}", e.condition());
                    ExitCode::from(e.exit_code())
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error [{}]: {e}", e.condition());
            if let CliError::Core(GkzError::EffortExceeded { trace, .. }) = &e {
                for line in trace {
                    eprintln!("  {line}");
                }
            }
            ExitCode::from(e.exit_code())
        }
    }
}
