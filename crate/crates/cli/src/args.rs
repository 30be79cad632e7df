use clap::{Args, Parser, Subcommand, ValueEnum};
use monty_core::{BoxLabel, GameModel, OpenedBox, Rational, Strategy, VoidSemantics};

use crate::CliError;

/// Default number of simulated rounds.
pub const DEFAULT_TRIALS: u64 = 1_000_000;
/// Seed used by simulations when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Parser)]
#[command(name = "monty", version, about = "Exact and simulated analysis of the Monty Hall game")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Generator seed. Simulations default to 0; `play` draws one from the clock.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Number of independent generator streams a simulation is split into.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub shards: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact posterior probability of a key placement given the host's action.
    Exact(ExactArgs),
    /// Monte Carlo estimate of a strategy's win rate.
    Simulate(SimulateArgs),
    /// Exact quantity on an evenly spaced grid of host biases (model2).
    Sweep(SweepArgs),
    /// Exact win probability next to a simulated estimate; exits 1 on disagreement.
    Compare(SimulateArgs),
    /// Play rounds interactively against the chosen host.
    Play(ModelArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Model1,
    Model2,
    Model3,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Host model: model1 (informed, evenhanded), model2 (informed, biased), model3 (ignorant).
    #[arg(long, value_enum)]
    pub model: ModelName,

    /// Probability that the model2 host opens C when free to choose ("a/b" or "a").
    #[arg(long)]
    pub p: Option<Rational>,
}

impl ModelArgs {
    pub fn name(&self) -> &'static str {
        match self.model {
            ModelName::Model1 => "model1",
            ModelName::Model2 => "model2",
            ModelName::Model3 => "model3",
        }
    }

    /// Builds the model; `--p` is required for model2 and rejected otherwise.
    pub fn build(&self) -> Result<GameModel, CliError> {
        match (self.model, self.p) {
            (ModelName::Model1, None) => Ok(monty_core::model1()),
            (ModelName::Model3, None) => Ok(monty_core::model3()),
            (ModelName::Model2, Some(p)) => Ok(monty_core::model2(p)?),
            (ModelName::Model2, None) => Err(CliError::Usage("--p is required for model2".into())),
            (_, Some(_)) => Err(CliError::Usage("--p only applies to model2".into())),
        }
    }
}

fn parse_opened(s: &str) -> Result<OpenedBox, String> {
    let label: BoxLabel = s.parse().map_err(|e| format!("{e}"))?;
    OpenedBox::try_from(label).map_err(|_| "the host never opens the contestant's box B".into())
}

fn parse_semantics(s: &str) -> Result<VoidSemantics, String> {
    match s {
        "void-round" => Ok(VoidSemantics::VoidRound),
        "count-as-loss" => Ok(VoidSemantics::CountAsLoss),
        _ => Err("expected void-round or count-as-loss".into()),
    }
}

#[derive(Debug, Clone, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Box the host opened (A or C).
    #[arg(long, value_parser = parse_opened)]
    pub opened: OpenedBox,

    /// Whether the opened box was empty.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub empty: bool,

    /// Box whose probability of holding the keys is reported.
    #[arg(long)]
    pub hypothesis: BoxLabel,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// always-stay, always-switch, switch-iff-a or switch-iff-c.
    #[arg(long)]
    pub strategy: Strategy,

    /// Number of rounds.
    #[arg(short = 'n', long = "trials", default_value_t = DEFAULT_TRIALS,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,

    /// Treatment of ignorant-host rounds that reveal the keys.
    #[arg(long, default_value = "void-round", value_parser = parse_semantics)]
    pub void_semantics: VoidSemantics,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// P(C | host opened A, empty).
    Posterior,
    /// Exact win probability of one strategy (or all four).
    ExpectedWin,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// First bias on the grid.
    #[arg(long = "from", default_value = "0")]
    pub p_from: Rational,

    /// Last bias on the grid.
    #[arg(long = "to", default_value = "1")]
    pub p_to: Rational,

    /// Number of intervals; the grid has `steps + 1` points.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,

    #[arg(long, value_enum, default_value_t = Quantity::Posterior)]
    pub quantity: Quantity,

    /// Strategy for expected-win; all four when omitted.
    #[arg(long)]
    pub strategy: Option<Strategy>,

    #[arg(long, default_value = "void-round", value_parser = parse_semantics)]
    pub void_semantics: VoidSemantics,
}
