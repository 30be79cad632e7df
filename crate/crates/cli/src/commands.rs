use std::io::{self, IsTerminal, Write};

use monty_core::montecarlo::WinExperiment;
use monty_core::{
    build_tree, enumerate_strategies, expected_win, model2, BoxLabel, Evidence, OpenedBox,
    Rational, ShardPlan, Strategy,
};

use crate::args::{Cli, Command, ExactArgs, ModelArgs, Quantity, SimulateArgs, SweepArgs, DEFAULT_SEED};
use crate::record::{write_record, write_sweep, OutputRecord};
use crate::{parallel, play, CliError};

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let shards = cli.shards as usize;
    match &cli.command {
        Command::Exact(args) => {
            write_record(out, &exact(args)?, cli.format)?;
            Ok(0)
        }
        Command::Simulate(args) => {
            write_record(out, &simulate(args, seed, shards)?, cli.format)?;
            Ok(0)
        }
        Command::Sweep(args) => {
            write_sweep(out, &sweep(args)?, cli.format)?;
            Ok(0)
        }
        Command::Compare(args) => {
            let record = compare(args, seed, shards)?;
            write_record(out, &record, cli.format)?;
            Ok(if record.agreement == Some(true) { 0 } else { 1 })
        }
        Command::Play(args) => {
            let stdin = io::stdin();
            if !stdin.is_terminal() {
                return Err(CliError::Usage("play needs an interactive terminal on stdin".into()));
            }
            let model = args.build()?;
            let seed = cli.seed.unwrap_or_else(play::clock_seed);
            play::session(&model, seed, &mut stdin.lock(), out)?;
            Ok(0)
        }
    }
}

fn with_model_params(record: OutputRecord, model: &ModelArgs) -> OutputRecord {
    match model.p {
        Some(p) => record.param("p", p),
        None => record,
    }
}

/// Exact posterior `P(hypothesis | evidence)`.
pub fn exact(args: &ExactArgs) -> Result<OutputRecord, CliError> {
    let model = args.model.build()?;
    let evidence = Evidence::new(args.opened, args.empty);
    let value = build_tree(&model).posterior(evidence, args.hypothesis)?;
    let mut record = with_model_params(OutputRecord::new("exact", args.model.name()), &args.model)
        .param("opened", args.opened)
        .param("empty", args.empty)
        .param("hypothesis", args.hypothesis)
        .param("query", format!("P({} | {})", args.hypothesis, evidence));
    record.exact_value = Some(value);
    Ok(record)
}

fn simulation_record(command: &str, args: &SimulateArgs, seed: u64, shards: usize) -> OutputRecord {
    with_model_params(OutputRecord::new(command, args.model.name()), &args.model)
        .param("strategy", args.strategy)
        .param("n", args.n)
        .param("seed", seed)
        .param("shards", shards)
        .param("void_semantics", args.void_semantics.name())
}

fn run_win(args: &SimulateArgs, seed: u64, shards: usize) -> Result<monty_core::SimStats, CliError> {
    let model = args.model.build()?;
    let plan = ShardPlan::new(args.n, seed, shards)?;
    let experiment = WinExperiment::new(&model, args.strategy, args.void_semantics, plan);
    Ok(parallel::run(&experiment)?)
}

pub fn simulate(args: &SimulateArgs, seed: u64, shards: usize) -> Result<OutputRecord, CliError> {
    let stats = run_win(args, seed, shards)?;
    let mut record = simulation_record("simulate", args, seed, shards);
    record.simulated = Some(stats);
    Ok(record)
}

/// Exact win probability against the simulated estimate. The two agree when
/// they differ by less than four estimated standard errors.
pub fn compare(args: &SimulateArgs, seed: u64, shards: usize) -> Result<OutputRecord, CliError> {
    let model = args.model.build()?;
    let exact = expected_win(&model, args.strategy, args.void_semantics)?;
    let stats = run_win(args, seed, shards)?;
    let mut record = simulation_record("compare", args, seed, shards);
    record.agreement = Some((stats.estimate - exact.to_f64()).abs() < stats.four_sigma());
    record.exact_value = Some(exact);
    record.simulated = Some(stats);
    Ok(record)
}

pub const POSTERIOR_QUANTITY: &str = "posterior_C_given_Aprime";

pub fn expected_win_quantity(strategy: Strategy) -> String {
    format!("expected_win:{strategy}")
}

/// The inclusive grid `from + (to - from) * i / steps`, `i = 0..=steps`.
pub fn bias_grid(from: Rational, to: Rational, steps: u64) -> Result<Vec<Rational>, CliError> {
    if from.is_negative() || to > Rational::ONE || from > to {
        return Err(CliError::Usage("sweep range must satisfy 0 <= from <= to <= 1".into()));
    }
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    let span = to - from;
    let steps_q = Rational::integer(steps.into());
    Ok((0..=steps)
        .map(|i| from + span * Rational::integer(i.into()) / steps_q)
        .collect())
}

pub fn sweep(args: &SweepArgs) -> Result<Vec<OutputRecord>, CliError> {
    let grid = bias_grid(args.p_from, args.p_to, args.steps)?;
    let strategies: Vec<Strategy> = match args.strategy {
        Some(s) => vec![s],
        None => enumerate_strategies().to_vec(),
    };
    let mut records = Vec::new();
    for p in grid {
        let model = model2(p)?;
        let mut push = |quantity: String, value: Rational| {
            let mut record = OutputRecord::new("sweep", "model2").param("p", p).param("quantity", quantity);
            record.exact_value = Some(value);
            records.push(record);
        };
        match args.quantity {
            Quantity::Posterior => {
                let value = build_tree(&model).posterior(Evidence::empty(OpenedBox::A), BoxLabel::C)?;
                push(POSTERIOR_QUANTITY.into(), value);
            }
            Quantity::ExpectedWin => {
                for &s in &strategies {
                    push(expected_win_quantity(s), expected_win(&model, s, args.void_semantics)?);
                }
            }
        }
    }
    Ok(records)
}
