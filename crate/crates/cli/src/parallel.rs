//! Runs the shards of an [`Experiment`] on scoped threads.
//!
//! Each shard owns its generator and the tallies are summed, so the result is
//! identical to the sequential [`Experiment::run`] for the same shard count.

use std::thread;

use monty_core::{Experiment, Result, SimStats, Tally};

pub fn run<E: Experiment + Sync>(experiment: &E) -> Result<SimStats> {
    let shards = experiment.plan().shards();
    if shards == 1 {
        return experiment.run();
    }
    let tally: Tally = thread::scope(|scope| {
        let handles: Vec<_> = (0..shards)
            .map(|i| scope.spawn(move || experiment.run_shard(i)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("shard thread panicked"))
            .sum()
    });
    experiment.finish(tally)
}
