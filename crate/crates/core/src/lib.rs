//! Exact inference and seeded simulation for the three-box Monty Hall game.
//!
//! The contestant always holds box `B`; box `A` sits on the left and box `C`
//! on the right. The host then opens `A` or `C` according to a [`HostPolicy`]:
//! either *informed* (never reveals the keys, opens `C` with probability
//! `bias_c` when both side boxes are empty) or *ignorant* (opens `A` or `C`
//! uniformly and may reveal the keys).
//!
//! * [`exact`] enumerates the depth-2 probability tree in exact rational
//!   arithmetic and conditions on the observed [`Evidence`].
//! * [`strategy`] evaluates the four deterministic stay/switch rules.
//! * [`montecarlo`] replays the game with a seeded, shardable generator and
//!   reports Wilson score intervals.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod exact;
pub mod model;
pub mod montecarlo;
mod rational;
pub mod strategy;

pub use error::{Error, Result};
pub use exact::{build_tree, ProbabilityTree, TreePath};
pub use model::{
    make_model, model1, model2, model3, standard_models, BoxLabel, BoxWeights, Evidence,
    GameModel, HostPolicy, OpenedBox,
};
pub use montecarlo::{
    estimate_posterior, estimate_win, simulate_round, Experiment, IntervalMethod,
    RoundOutcome, ShardPlan, SimStats, Tally,
};
pub use rational::{ParseRationalError, Rational};
pub use strategy::{
    best_strategy, enumerate_strategies, expected_win, Action, BestStrategy, Strategy,
    VoidSemantics, WinReport,
};
