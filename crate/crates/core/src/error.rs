use thiserror::Error;

/// Errors raised by model construction, conditioning and estimation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Error {
    #[error("prior weights must sum to exactly 1")]
    NonNormalizedPrior,
    #[error("prior weights must be non-negative")]
    NegativeWeight,
    #[error("host bias must lie in [0, 1]")]
    BiasOutOfRange,
    #[error("cannot condition on an event of probability zero")]
    ConditioningOnNull,
    #[error("no round survived voiding or rejection")]
    NoValidRounds,
    #[error("at least one trial and one shard are required")]
    NoTrials,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
