//! `mark`: window-maximum knowledge metrics from the command line.
//!
//! Exit codes: 0 on success, 2 when the input files or flags are invalid
//! (clap uses the same code for usage errors), 1 when the tool itself
//! fails on valid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mark::OrderingMode;
use mark_cli::commands::{self, FlagValues};
use mark_cli::error::{CliError, CliResult};
use mark_cli::input::Format;

#[derive(Parser)]
#[command(
    name = "mark",
    version,
    about = "Knowledge metrics that read how probability clusters over an arranged candidate line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score one belief state: window knowledge plus entropy comparators
    State(StateArgs),
    /// Score a sequence of belief states and price the progress
    Timeline(TimelineArgs),
    /// Score a hierarchical candidate tree node by node and level by level
    Tree(TreeArgs),
    /// Arrange candidates from expert ranks with probability tie-breaks
    Order(OrderArgs),
}

#[derive(Args)]
struct OutputFlags {
    /// Output shape
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScoreFlags {
    /// Smallest window width of interest (with --iof; defaults to the
    /// nominal window 1..n-1)
    #[arg(long)]
    ioi: Option<f64>,
    /// Largest window width of interest (with --ioi)
    #[arg(long)]
    iof: Option<f64>,
    /// Candidate arrangement to score; required for discrete inputs
    /// unless the input's config block sets it
    #[arg(long, value_enum)]
    ordering: Option<OrderingArg>,
    /// Read probabilities as percentages (divided by 100 before the
    /// strict unit-sum check)
    #[arg(long)]
    percent: bool,
    /// Logarithm base for the entropy comparators [default: 2]
    #[arg(long)]
    log_base: Option<f64>,
    /// Orders for the Renyi and Tsallis comparators (repeat the flag or
    /// separate with commas)
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<f64>,
    /// Weighting order favoring narrow windows; 0 is the flat average
    #[arg(long)]
    k: Option<u32>,
}

/// Candidate arrangement choices, mirroring the library's modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderingArg {
    /// Keep the order the input lists
    Listed,
    /// Sort by descending probability (the seeker's best case)
    ByProbability,
    /// Expert ranks first, probability tie-breaks, unranked tail
    Composite,
}

impl From<OrderingArg> for OrderingMode {
    fn from(a: OrderingArg) -> Self {
        match a {
            OrderingArg::Listed => OrderingMode::Listed,
            OrderingArg::ByProbability => OrderingMode::ByProbability,
            OrderingArg::Composite => OrderingMode::Composite,
        }
    }
}

#[derive(Args)]
struct StateArgs {
    /// Input file: .csv (label header plus one probability row) or .json
    input: PathBuf,
    #[command(flatten)]
    score: ScoreFlags,
    #[command(flatten)]
    output: OutputFlags,
}

#[derive(Args)]
struct TimelineArgs {
    /// Input file: .csv (state,resource,<labels...> header) or .json
    input: PathBuf,
    #[command(flatten)]
    score: ScoreFlags,
    /// Score the curve on the normalized scale that reads 1 at uniform
    /// ignorance
    #[arg(long)]
    normalized: bool,
    #[command(flatten)]
    output: OutputFlags,
}

#[derive(Args)]
struct TreeArgs {
    /// Input file: .json with a "tree" object
    input: PathBuf,
    #[command(flatten)]
    output: OutputFlags,
}

#[derive(Args)]
struct OrderArgs {
    /// Input file: .csv (label,rank,prob; empty rank = unranked) or .json
    input: PathBuf,
    /// Read probabilities as percentages
    #[arg(long)]
    percent: bool,
    #[command(flatten)]
    output: OutputFlags,
}

fn flag_values(score: Option<ScoreFlags>, format: Option<Format>, normalized: bool) -> FlagValues {
    let score = score.unwrap_or(ScoreFlags {
        ioi: None,
        iof: None,
        ordering: None,
        percent: false,
        log_base: None,
        alpha: Vec::new(),
        k: None,
    });
    FlagValues {
        ioi: score.ioi,
        iof: score.iof,
        ordering: score.ordering.map(OrderingMode::from),
        normalized,
        percent: score.percent,
        log_base: score.log_base,
        alpha: score.alpha,
        k: score.k,
        format,
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Internal(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::State(args) => {
            let flags = flag_values(Some(args.score), args.output.format, false);
            let text = commands::state(&args.input, flags)?;
            emit(&text, args.output.out.as_ref())
        }
        Command::Timeline(args) => {
            let flags = flag_values(Some(args.score), args.output.format, args.normalized);
            let text = commands::timeline(&args.input, flags)?;
            emit(&text, args.output.out.as_ref())
        }
        Command::Tree(args) => {
            let flags = flag_values(None, args.output.format, false);
            let text = commands::tree(&args.input, flags)?;
            emit(&text, args.output.out.as_ref())
        }
        Command::Order(args) => {
            let mut flags = flag_values(None, args.output.format, false);
            flags.percent = args.percent;
            let text = commands::order(&args.input, flags)?;
            emit(&text, args.output.out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
