//! Seeded simulation of rounds, strategy win rates and rejection-sampled
//! posteriors.
//!
//! # Randomness
//!
//! Every shard owns a [`ChaCha8Rng`] seeded with `seed_from_u64(seed)` and
//! moved to stream `shard_index` with [`ChaCha8Rng::set_stream`]. ChaCha
//! streams with the same key never overlap, so shard `i` of seed `s` is
//! independent of every other shard and a single-shard run is exactly the
//! plain `seed_from_u64(seed)` generator. Results are reproducible for a
//! fixed `(seed, shards)` pair; the per-shard tallies merge by addition, so
//! the merge order is irrelevant.
//!
//! Rational probabilities are never compared against floats. A weight `a/b`
//! is drawn as `U < a` with `U` uniform on `0..b` (rejection-based, exact).

use rand::distr::{Distribution, Uniform};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::build_tree;
use crate::model::{BoxLabel, Evidence, GameModel, HostPolicy, OpenedBox};
use crate::rational::Rational;
use crate::strategy::{Strategy, VoidSemantics};

/// Two-sided 95% standard normal quantile.
const Z_95: f64 = 1.959963984540054;

/// A uniform integer below a fixed bound.
#[derive(Debug, Clone, Copy)]
enum Below {
    Narrow(Uniform<u64>),
    Wide(Uniform<u128>),
}

impl Below {
    fn new(bound: u128) -> Self {
        debug_assert!(bound > 0);
        match u64::try_from(bound) {
            Ok(b) => Below::Narrow(Uniform::new(0, b).expect("non-empty range")),
            Err(_) => Below::Wide(Uniform::new(0, bound).expect("non-empty range")),
        }
    }

    fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> u128 {
        match self {
            Below::Narrow(u) => u.sample(rng).into(),
            Below::Wide(u) => u.sample(rng),
        }
    }
}

/// Bernoulli trial with an exact rational success probability.
#[derive(Debug, Clone, Copy)]
pub struct ExactBernoulli {
    numer: u128,
    below: Below,
}

impl ExactBernoulli {
    /// `p` must lie in `[0, 1]`.
    pub fn new(p: Rational) -> Result<Self> {
        if !p.is_probability() {
            return Err(Error::BiasOutOfRange);
        }
        Ok(ExactBernoulli {
            numer: p.numer() as u128,
            below: Below::new(p.denom() as u128),
        })
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> bool {
        self.below.sample(rng) < self.numer
    }
}

/// A [`GameModel`] compiled into exact integer samplers.
///
/// The key box is drawn by the chain rule: `A` with probability `P(A)`,
/// otherwise `B` with probability `P(B) / (P(B) + P(C))`, otherwise `C`.
#[derive(Debug, Clone, Copy)]
pub struct RoundSampler {
    key_in_a: ExactBernoulli,
    key_in_b_given_not_a: Option<ExactBernoulli>,
    host: HostSampler,
}

#[derive(Debug, Clone, Copy)]
enum HostSampler {
    /// Opens `C` when free to choose.
    Informed(ExactBernoulli),
    /// Opens `C` with probability 1/2.
    Ignorant(ExactBernoulli),
}

impl RoundSampler {
    pub fn new(model: &GameModel) -> Self {
        let prior = model.prior();
        let (a, b) = (prior.get(BoxLabel::A), prior.get(BoxLabel::B));
        let rest = Rational::ONE - a;
        let bern = |p| ExactBernoulli::new(p).expect("validated model");
        let host = match model.policy() {
            HostPolicy::Informed { bias_c } => HostSampler::Informed(bern(bias_c)),
            HostPolicy::Ignorant => HostSampler::Ignorant(bern(Rational::frac(1, 2))),
        };
        RoundSampler {
            key_in_a: bern(a),
            key_in_b_given_not_a: (!rest.is_zero()).then(|| bern(b / rest)),
            host,
        }
    }

    pub fn sample_key<R: RngCore + ?Sized>(&self, rng: &mut R) -> BoxLabel {
        if self.key_in_a.sample(rng) {
            return BoxLabel::A;
        }
        match &self.key_in_b_given_not_a {
            Some(b) if b.sample(rng) => BoxLabel::B,
            Some(_) => BoxLabel::C,
            None => unreachable!("P(A) = 1 always draws A"),
        }
    }

    /// The host's move given the key placement.
    pub fn sample_opened<R: RngCore + ?Sized>(&self, key_box: BoxLabel, rng: &mut R) -> OpenedBox {
        let open_c = match &self.host {
            HostSampler::Informed(bias_c) => match key_box {
                BoxLabel::A => true,
                BoxLabel::C => false,
                BoxLabel::B => bias_c.sample(rng),
            },
            HostSampler::Ignorant(half) => half.sample(rng),
        };
        if open_c {
            OpenedBox::C
        } else {
            OpenedBox::A
        }
    }

    pub fn sample_round<R: RngCore + ?Sized>(&self, strategy: Strategy, rng: &mut R) -> RoundOutcome {
        let key_box = self.sample_key(rng);
        let opened = self.sample_opened(key_box, rng);
        let final_pick = strategy.final_pick(opened);
        RoundOutcome {
            key_box,
            opened,
            found_empty: key_box != opened.label(),
            final_pick,
            won: final_pick == key_box,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundOutcome {
    pub key_box: BoxLabel,
    pub opened: OpenedBox,
    pub found_empty: bool,
    pub final_pick: BoxLabel,
    pub won: bool,
}

impl RoundOutcome {
    pub fn evidence(&self) -> Evidence {
        Evidence::new(self.opened, self.found_empty)
    }
}

/// Plays one round. Compiles the model on every call; loops should hold a
/// [`RoundSampler`] instead.
pub fn simulate_round<R: RngCore + ?Sized>(model: &GameModel, strategy: Strategy, rng: &mut R) -> RoundOutcome {
    RoundSampler::new(model).sample_round(strategy, rng)
}

/// Raw counts; merging is plain addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Tally {
    pub trials_requested: u64,
    pub trials_counted: u64,
    pub wins: u64,
}

impl Tally {
    pub fn merge(self, other: Tally) -> Tally {
        Tally {
            trials_requested: self.trials_requested + other.trials_requested,
            trials_counted: self.trials_counted + other.trials_counted,
            wins: self.wins + other.wins,
        }
    }
}

impl core::iter::Sum for Tally {
    fn sum<I: Iterator<Item = Tally>>(iter: I) -> Tally {
        iter.fold(Tally::default(), Tally::merge)
    }
}

/// How `trials` rounds split into `shards` independent streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShardPlan {
    trials: u64,
    seed: u64,
    shards: usize,
}

impl ShardPlan {
    pub fn new(trials: u64, seed: u64, shards: usize) -> Result<Self> {
        if trials == 0 || shards == 0 {
            return Err(Error::NoTrials);
        }
        Ok(ShardPlan { trials, seed, shards })
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn shards(&self) -> usize {
        self.shards
    }

    /// The first `trials % shards` shards take one extra round.
    pub fn shard_trials(&self, index: usize) -> u64 {
        let shards = self.shards as u64;
        let extra = u64::from((index as u64) < self.trials % shards);
        self.trials / shards + extra
    }

    pub fn shard_rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum IntervalMethod {
    #[default]
    #[cfg_attr(feature = "serde", serde(rename = "wilson-95"))]
    Wilson95,
}

/// Summary of a simulation. `estimate` and the interval bounds are the only
/// floating-point quantities in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimStats {
    pub trials_requested: u64,
    pub trials_counted: u64,
    pub wins: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    pub interval: IntervalMethod,
}

impl SimStats {
    pub fn from_tally(tally: Tally, seed: u64) -> Result<Self> {
        if tally.trials_counted == 0 {
            return Err(Error::NoValidRounds);
        }
        let (ci_low, ci_high) = wilson_interval(tally.wins, tally.trials_counted);
        Ok(SimStats {
            trials_requested: tally.trials_requested,
            trials_counted: tally.trials_counted,
            wins: tally.wins,
            estimate: tally.wins as f64 / tally.trials_counted as f64,
            ci_low,
            ci_high,
            seed,
            interval: IntervalMethod::Wilson95,
        })
    }

    /// Fraction of requested rounds that entered the tally.
    pub fn acceptance_rate(&self) -> f64 {
        self.trials_counted as f64 / self.trials_requested as f64
    }

    /// `4 * sqrt(estimate * (1 - estimate) / trials_counted)`.
    pub fn four_sigma(&self) -> f64 {
        let v = self.estimate * (1.0 - self.estimate);
        4.0 * libm::sqrt(v / self.trials_counted as f64)
    }
}

/// Wilson score interval at 95% for `wins` successes out of `n`. The bounds
/// are clamped to `[0, 1]` and always bracket `wins / n`.
pub fn wilson_interval(wins: u64, n: u64) -> (f64, f64) {
    assert!(n > 0 && wins <= n);
    let n = n as f64;
    let p = wins as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z_95 * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    let low = (center - half).max(0.0).min(p);
    let high = (center + half).min(1.0).max(p);
    (low, high)
}

/// A simulation that splits into independently seeded shards.
pub trait Experiment {
    fn plan(&self) -> &ShardPlan;

    fn run_shard(&self, index: usize) -> Tally;

    fn finish(&self, tally: Tally) -> Result<SimStats> {
        SimStats::from_tally(tally, self.plan().seed())
    }

    /// Runs every shard in order on the current thread.
    fn run(&self) -> Result<SimStats> {
        let tally = (0..self.plan().shards()).map(|i| self.run_shard(i)).sum();
        self.finish(tally)
    }
}

/// Win rate of a strategy.
#[derive(Debug, Clone)]
pub struct WinExperiment {
    sampler: RoundSampler,
    strategy: Strategy,
    semantics: VoidSemantics,
    plan: ShardPlan,
}

impl WinExperiment {
    pub fn new(model: &GameModel, strategy: Strategy, semantics: VoidSemantics, plan: ShardPlan) -> Self {
        WinExperiment {
            sampler: RoundSampler::new(model),
            strategy,
            semantics,
            plan,
        }
    }
}

impl Experiment for WinExperiment {
    fn plan(&self) -> &ShardPlan {
        &self.plan
    }

    fn run_shard(&self, index: usize) -> Tally {
        let mut rng = self.plan.shard_rng(index);
        let trials = self.plan.shard_trials(index);
        let mut tally = Tally {
            trials_requested: trials,
            ..Tally::default()
        };
        for _ in 0..trials {
            let round = self.sampler.sample_round(self.strategy, &mut rng);
            if self.semantics.counts(round.found_empty) {
                tally.trials_counted += 1;
                tally.wins += u64::from(round.won);
            }
        }
        tally
    }
}

/// Rejection sampling of `P(hypothesis | evidence)`: rounds not matching the
/// evidence are discarded, `wins` counts kept rounds with the keys in
/// `hypothesis`.
#[derive(Debug, Clone)]
pub struct PosteriorExperiment {
    sampler: RoundSampler,
    evidence: Evidence,
    hypothesis: BoxLabel,
    plan: ShardPlan,
}

impl PosteriorExperiment {
    /// Fails with [`Error::ConditioningOnNull`] when the evidence is impossible.
    pub fn new(model: &GameModel, evidence: Evidence, hypothesis: BoxLabel, plan: ShardPlan) -> Result<Self> {
        if build_tree(model).event_probability(evidence).is_zero() {
            return Err(Error::ConditioningOnNull);
        }
        Ok(PosteriorExperiment {
            sampler: RoundSampler::new(model),
            evidence,
            hypothesis,
            plan,
        })
    }
}

impl Experiment for PosteriorExperiment {
    fn plan(&self) -> &ShardPlan {
        &self.plan
    }

    fn run_shard(&self, index: usize) -> Tally {
        let mut rng = self.plan.shard_rng(index);
        let trials = self.plan.shard_trials(index);
        let mut tally = Tally {
            trials_requested: trials,
            ..Tally::default()
        };
        for _ in 0..trials {
            let key_box = self.sampler.sample_key(&mut rng);
            let opened = self.sampler.sample_opened(key_box, &mut rng);
            if Evidence::new(opened, key_box != opened.label()) == self.evidence {
                tally.trials_counted += 1;
                tally.wins += u64::from(key_box == self.hypothesis);
            }
        }
        tally
    }
}

/// Single-shard win-rate estimate over `n` rounds.
pub fn estimate_win(
    model: &GameModel,
    strategy: Strategy,
    n: u64,
    seed: u64,
    semantics: VoidSemantics,
) -> Result<SimStats> {
    WinExperiment::new(model, strategy, semantics, ShardPlan::new(n, seed, 1)?).run()
}

/// Single-shard rejection-sampling estimate of `P(hypothesis | evidence)`.
pub fn estimate_posterior(
    model: &GameModel,
    evidence: Evidence,
    hypothesis: BoxLabel,
    n: u64,
    seed: u64,
) -> Result<SimStats> {
    PosteriorExperiment::new(model, evidence, hypothesis, ShardPlan::new(n, seed, 1)?)?.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{model1, model2, model3};
    use crate::strategy::expected_win;

    fn r(n: i128, d: i128) -> Rational {
        Rational::frac(n, d)
    }

    /// Upper 1e-6 tail of chi-square with one degree of freedom.
    const CHI2_1DF_1E6: f64 = 23.928126976934827;

    #[test]
    fn exact_bernoulli_passes_chi_square() {
        let n = 100_000u64;
        for (i, p) in [r(1, 3), r(1, 2), r(2, 7), r(9, 10), r(1, 1000)].into_iter().enumerate() {
            let bern = ExactBernoulli::new(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + i as u64);
            let hits = (0..n).filter(|_| bern.sample(&mut rng)).count() as f64;
            let expected = n as f64 * p.to_f64();
            let stat = (hits - expected).powi(2) / (expected * (1.0 - p.to_f64()));
            assert!(stat < CHI2_1DF_1E6, "p = {p}: chi2 = {stat}");
        }
    }

    #[test]
    fn bernoulli_edges_are_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let never = ExactBernoulli::new(Rational::ZERO).unwrap();
        let always = ExactBernoulli::new(Rational::ONE).unwrap();
        assert!((0..1000).all(|_| !never.sample(&mut rng) && always.sample(&mut rng)));
        assert!(ExactBernoulli::new(r(3, 2)).is_err());
    }

    #[test]
    fn wide_denominators_sample() {
        let p = Rational::new(1, (u64::MAX as i128) * 4).unwrap();
        let bern = ExactBernoulli::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!((0..1000).all(|_| !bern.sample(&mut rng)));
    }

    #[test]
    fn extreme_host_always_opens_c_over_b() {
        let sampler = RoundSampler::new(&model2(Rational::ONE).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert!((0..1000).all(|_| sampler.sample_opened(BoxLabel::B, &mut rng) == OpenedBox::C));
    }

    #[test]
    fn informed_host_is_forced_when_keys_are_aside() {
        let sampler = RoundSampler::new(&model1());
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..1000 {
            assert_eq!(sampler.sample_opened(BoxLabel::C, &mut rng), OpenedBox::A);
            assert_eq!(sampler.sample_opened(BoxLabel::A, &mut rng), OpenedBox::C);
        }
        // Switching when the keys are in C always wins.
        for _ in 0..1000 {
            let round = simulate_round(&model1(), Strategy::ALWAYS_SWITCH, &mut rng);
            if round.key_box == BoxLabel::C {
                assert_eq!(round.opened, OpenedBox::A);
                assert_eq!(round.final_pick, BoxLabel::C);
                assert!(round.won);
            }
            assert_eq!(round.won, round.final_pick == round.key_box);
        }
    }

    #[test]
    fn ignorant_host_can_reveal_keys() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let revealed = (0..1000)
            .map(|_| simulate_round(&model3(), Strategy::ALWAYS_STAY, &mut rng))
            .find(|o| o.key_box == BoxLabel::A && o.opened == OpenedBox::A)
            .expect("a revealing round in 1000 draws");
        assert!(!revealed.found_empty);
        assert!(!revealed.won);
    }

    #[test]
    fn skewed_prior_draws_every_box_at_its_rate() {
        let prior = crate::model::BoxWeights::new(r(1, 2), r(1, 3), r(1, 6));
        let model = crate::model::make_model(prior, HostPolicy::Ignorant).unwrap();
        let sampler = RoundSampler::new(&model);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let n = 60_000;
        let mut counts = [0u32; 3];
        for _ in 0..n {
            counts[sampler.sample_key(&mut rng).index()] += 1;
        }
        for (label, p) in prior.iter() {
            let expected = n as f64 * p.to_f64();
            let sd = libm::sqrt(expected * (1.0 - p.to_f64()));
            assert!((counts[label.index()] as f64 - expected).abs() < 5.0 * sd);
        }
        let certain = crate::model::make_model(
            crate::model::BoxWeights::new(Rational::ZERO, Rational::ZERO, Rational::ONE),
            HostPolicy::Ignorant,
        )
        .unwrap();
        let sampler = RoundSampler::new(&certain);
        assert!((0..100).all(|_| sampler.sample_key(&mut rng) == BoxLabel::C));
    }

    #[test]
    fn shard_split_covers_all_trials() {
        let plan = ShardPlan::new(10, 0, 3).unwrap();
        let sizes: std::vec::Vec<_> = (0..3).map(|i| plan.shard_trials(i)).collect();
        assert_eq!(sizes, [4, 3, 3]);
        let plan = ShardPlan::new(2, 0, 5).unwrap();
        assert_eq!((0..5).map(|i| plan.shard_trials(i)).sum::<u64>(), 2);
        assert_eq!(ShardPlan::new(0, 0, 1), Err(Error::NoTrials));
        assert_eq!(ShardPlan::new(1, 0, 0), Err(Error::NoTrials));
    }

    #[test]
    fn single_shard_stream_is_the_plain_seed() {
        let plan = ShardPlan::new(1, 99, 1).unwrap();
        let mut a = plan.shard_rng(0);
        let mut b = ChaCha8Rng::seed_from_u64(99);
        assert_eq!(a.next_u64(), b.next_u64());
        let mut other = ShardPlan::new(1, 99, 2).unwrap().shard_rng(1);
        assert_ne!(ChaCha8Rng::seed_from_u64(99).next_u64(), other.next_u64());
    }

    #[test]
    fn reproducible_and_shard_dependent() {
        let m = model1();
        let plan = ShardPlan::new(20_000, 5, 4).unwrap();
        let run = || WinExperiment::new(&m, Strategy::ALWAYS_SWITCH, VoidSemantics::VoidRound, plan).run();
        assert_eq!(run(), run());
        let tallies: std::vec::Vec<Tally> = {
            let e = WinExperiment::new(&m, Strategy::ALWAYS_SWITCH, VoidSemantics::VoidRound, plan);
            (0..4).map(|i| e.run_shard(i)).collect()
        };
        let forward: Tally = tallies.iter().copied().sum();
        let backward: Tally = tallies.iter().rev().copied().sum();
        assert_eq!(forward, backward);
        assert_eq!(forward.trials_requested, 20_000);
    }

    #[test]
    fn void_semantics_change_the_denominator() {
        let m = model3();
        let void = estimate_win(&m, Strategy::ALWAYS_SWITCH, 30_000, 2, VoidSemantics::VoidRound).unwrap();
        assert!(void.trials_counted < void.trials_requested);
        let loss = estimate_win(&m, Strategy::ALWAYS_SWITCH, 10, 1, VoidSemantics::CountAsLoss).unwrap();
        assert_eq!(loss.trials_counted, 10);
        let informed = estimate_win(&model1(), Strategy::ALWAYS_STAY, 1000, 1, VoidSemantics::VoidRound).unwrap();
        assert_eq!(informed.trials_counted, 1000);
    }

    #[test]
    fn estimates_sit_inside_four_sigma() {
        for (m, s) in [
            (model1(), Strategy::ALWAYS_SWITCH),
            (model2(r(9, 10)).unwrap(), Strategy::SWITCH_IFF_A),
            (model3(), Strategy::ALWAYS_SWITCH),
        ] {
            let exact = expected_win(&m, s, VoidSemantics::VoidRound).unwrap().to_f64();
            let stats = estimate_win(&m, s, 100_000, 31, VoidSemantics::VoidRound).unwrap();
            assert!((stats.estimate - exact).abs() < stats.four_sigma(), "{s}: {stats:?}");
            assert!(stats.ci_low <= stats.estimate && stats.estimate <= stats.ci_high);
        }
    }

    #[test]
    fn rejection_sampling_tracks_the_posterior() {
        let stats = estimate_posterior(&model2(Rational::ONE).unwrap(), Evidence::empty(OpenedBox::C), BoxLabel::B, 60_000, 8)
            .unwrap();
        assert!((stats.estimate - 0.5).abs() < stats.four_sigma());
        let p_event = 2.0 / 3.0;
        let sd = libm::sqrt(p_event * (1.0 - p_event) / 60_000.0);
        assert!((stats.acceptance_rate() - p_event).abs() < 4.0 * sd);
    }

    #[test]
    fn impossible_evidence_is_rejected_up_front() {
        let err = estimate_posterior(&model1(), Evidence::revealed(OpenedBox::A), BoxLabel::A, 10, 0);
        assert_eq!(err, Err(Error::ConditioningOnNull));
    }

    #[test]
    fn wilson_interval_edges() {
        let (lo, hi) = wilson_interval(0, 1);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.75 && hi < 0.8);
        let (lo, hi) = wilson_interval(1, 1);
        assert!(lo > 0.2 && lo < 0.25);
        assert_eq!(hi, 1.0);
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo - 0.4038).abs() < 1e-4 && (hi - 0.5962).abs() < 1e-4);
    }
}
