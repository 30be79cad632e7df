//! Exact conditioning on the two-level probability tree.
//!
//! The first level places the keys according to the prior, the second level is
//! the host's action. Each leaf carries the product of the two branch
//! probabilities. Dead branches (zero weight) are pruned, so a tree has at
//! most six leaves and its weights always sum to exactly one.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{BoxLabel, BoxWeights, Evidence, GameModel, HostPolicy, OpenedBox};
use crate::rational::Rational;

/// One leaf of the tree: where the keys are and which box the host opened.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreePath {
    pub key_box: BoxLabel,
    pub opened: OpenedBox,
    pub weight: Rational,
}

impl TreePath {
    pub fn found_empty(&self) -> bool {
        self.key_box != self.opened.label()
    }

    pub fn evidence(&self) -> Evidence {
        Evidence::new(self.opened, self.found_empty())
    }

    pub fn matches(&self, evidence: Evidence) -> bool {
        self.evidence() == evidence
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityTree {
    model: GameModel,
    paths: Vec<TreePath>,
}

/// Probability that the host opens `opened` given the keys are in `key_box`.
fn host_law(policy: HostPolicy, key_box: BoxLabel, opened: OpenedBox) -> Rational {
    match policy {
        HostPolicy::Ignorant => Rational::frac(1, 2),
        HostPolicy::Informed { bias_c } => match (key_box, opened) {
            (BoxLabel::B, OpenedBox::C) => bias_c,
            (BoxLabel::B, OpenedBox::A) => Rational::ONE - bias_c,
            // Forced: open the only empty side box.
            (key, opened) if key == opened.label() => Rational::ZERO,
            _ => Rational::ONE,
        },
    }
}

/// Enumerates every positive-weight `(key_box, opened)` pair, ordered by key
/// box then opened box.
pub fn build_tree(model: &GameModel) -> ProbabilityTree {
    let paths = BoxLabel::ALL
        .into_iter()
        .flat_map(|key_box| {
            OpenedBox::ALL.into_iter().map(move |opened| TreePath {
                key_box,
                opened,
                weight: model.prior().get(key_box) * host_law(model.policy(), key_box, opened),
            })
        })
        .filter(|path| !path.weight.is_zero())
        .collect();
    ProbabilityTree {
        model: *model,
        paths,
    }
}

impl ProbabilityTree {
    pub fn model(&self) -> &GameModel {
        &self.model
    }

    pub fn paths(&self) -> &[TreePath] {
        &self.paths
    }

    pub fn total_weight(&self) -> Rational {
        self.paths.iter().map(|p| p.weight).sum()
    }

    /// Total probability of the evidence; zero if no leaf matches.
    pub fn event_probability(&self, evidence: Evidence) -> Rational {
        self.paths
            .iter()
            .filter(|p| p.matches(evidence))
            .map(|p| p.weight)
            .sum()
    }

    /// Joint probability of the keys being in `hypothesis` and observing `evidence`.
    pub fn joint_probability(&self, evidence: Evidence, hypothesis: BoxLabel) -> Rational {
        self.paths
            .iter()
            .filter(|p| p.matches(evidence) && p.key_box == hypothesis)
            .map(|p| p.weight)
            .sum()
    }

    /// Bayes' formula: joint weight over the total weight of the evidence.
    pub fn posterior(&self, evidence: Evidence, hypothesis: BoxLabel) -> Result<Rational> {
        let marginal = self.event_probability(evidence);
        if marginal.is_zero() {
            return Err(Error::ConditioningOnNull);
        }
        Ok(self.joint_probability(evidence, hypothesis) / marginal)
    }

    pub fn posterior_distribution(&self, evidence: Evidence) -> Result<BoxWeights> {
        let marginal = self.event_probability(evidence);
        if marginal.is_zero() {
            return Err(Error::ConditioningOnNull);
        }
        let mut out = BoxWeights::default();
        for label in BoxLabel::ALL {
            out.set(label, self.joint_probability(evidence, label) / marginal);
        }
        Ok(out)
    }

    /// Evidence values with positive probability, in [`Evidence::ALL`] order.
    pub fn possible_evidence(&self) -> impl Iterator<Item = Evidence> + '_ {
        Evidence::ALL
            .into_iter()
            .filter(|e| !self.event_probability(*e).is_zero())
    }
}
