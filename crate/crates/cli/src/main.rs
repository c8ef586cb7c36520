mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "dlsml", version, about = "Duckworth-Lewis par scores, winner classifiers, PSO table fitting and an unpredictability index")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a seeded synthetic corpus.
    Synth(SynthArgs),
    /// Compare classifiers with the par-score rule on checkpoints and over ranges.
    Evaluate(EvaluateArgs),
    /// Re-fit wicket columns 0-3 of the resource table by particle swarm.
    Optimize(OptimizeArgs),
    /// Rank teams by over-40 par-score failure rates.
    Index(IndexArgs),
    /// Check a resource table file.
    ValidateTable(ValidateArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Resource table CSV; the bundled table when omitted.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Args)]
struct Inputs {
    #[arg(long)]
    matches: PathBuf,
    #[arg(long)]
    snapshots: PathBuf,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[command(flatten)]
    common: Common,
    /// Number of matches.
    #[arg(long, default_value_t = 2000)]
    n: usize,
    /// Fraction of matches alive after over 40 steered against the over-40 call.
    #[arg(long, default_value_t = 0.12, conflicts_with = "no_steering")]
    disagreement: f64,
    /// Leave every result to the innings model.
    #[arg(long)]
    no_steering: bool,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[command(flatten)]
    inputs: Inputs,
    #[command(flatten)]
    common: Common,
    /// Comma-separated classifier kinds.
    #[arg(long, value_delimiter = ',', default_value = "naive_bayes,neural_net,bagged_naive_bayes,random_forest")]
    kinds: Vec<String>,
    #[arg(long, default_value_t = 1e-9)]
    nb_var_floor: f64,
    #[arg(long, default_value_t = 8)]
    nn_hidden: usize,
    #[arg(long, default_value_t = 0.1)]
    nn_learning_rate: f64,
    #[arg(long, default_value_t = 200)]
    nn_epochs: usize,
    #[arg(long, default_value_t = 25)]
    bagging_members: usize,
    #[arg(long, default_value_t = 100)]
    forest_trees: usize,
    #[arg(long, default_value_t = 3)]
    forest_max_features: usize,
    #[arg(long, default_value_t = 2)]
    forest_min_leaf: usize,
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    #[command(flatten)]
    inputs: Inputs,
    #[command(flatten)]
    common: Common,
    /// per-cell or per-column.
    #[arg(long, default_value = "per-cell")]
    mode: String,
    #[arg(long, default_value_t = 50)]
    generations: usize,
    #[arg(long, default_value_t = 10)]
    swarm: usize,
    #[arg(long, default_value_t = 2.0)]
    c1: f64,
    #[arg(long, default_value_t = 2.5)]
    c2: f64,
    #[arg(long, default_value_t = 0.7)]
    inertia: f64,
    /// Velocity cap as a fraction of the 0-100 range.
    #[arg(long, default_value_t = 0.2)]
    vmax: f64,
    /// Drop the non-increasing column condition.
    #[arg(long, conflicts_with = "enforce_wicket_order")]
    unconstrained: bool,
    /// Also keep rows non-increasing as wickets fall.
    #[arg(long)]
    enforce_wicket_order: bool,
}

#[derive(Debug, Args)]
struct IndexArgs {
    #[command(flatten)]
    inputs: Inputs,
    #[command(flatten)]
    common: Common,
    /// Minimum over-40 matches in the role for a team to be ranked.
    #[arg(long, default_value_t = 40)]
    min_matches: u32,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long)]
    table: PathBuf,
    /// Accept rows that rise as wickets fall, as left by `optimize` without
    /// --enforce-wicket-order.
    #[arg(long)]
    allow_wicket_order: bool,
}

/// The error chain on one line, skipping causes already quoted by their
/// parent's message.
fn one_line(e: &anyhow::Error) -> String {
    let mut text = String::new();
    for cause in e.chain() {
        let part = cause.to_string();
        if text.contains(&part) {
            continue;
        }
        if !text.is_empty() {
            text.push_str(": ");
        }
        text.push_str(&part);
    }
    text.replace('\n', " ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", first.trim());
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", one_line(&e));
            ExitCode::FAILURE
        }
    }
}
