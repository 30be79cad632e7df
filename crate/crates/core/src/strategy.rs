//! Contestant strategies and their exact win probabilities.
//!
//! A strategy maps each possible host action to stay or switch. Only the
//! four deterministic rules are enumerated: the win probability of a
//! randomized rule is a convex combination of the deterministic rules it
//! mixes, so it can never beat the best of them.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::build_tree;
use crate::model::{BoxLabel, GameModel, OpenedBox};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Action {
    Stay,
    Switch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Strategy {
    pub on_a_opened: Action,
    pub on_c_opened: Action,
}

impl Strategy {
    pub const ALWAYS_STAY: Strategy = Strategy::new(Action::Stay, Action::Stay);
    pub const ALWAYS_SWITCH: Strategy = Strategy::new(Action::Switch, Action::Switch);
    /// Switch to `C` when the host opens `A`, keep `B` when the host opens `C`.
    pub const SWITCH_IFF_A: Strategy = Strategy::new(Action::Switch, Action::Stay);
    pub const SWITCH_IFF_C: Strategy = Strategy::new(Action::Stay, Action::Switch);

    pub const fn new(on_a_opened: Action, on_c_opened: Action) -> Self {
        Strategy {
            on_a_opened,
            on_c_opened,
        }
    }

    pub fn action(&self, opened: OpenedBox) -> Action {
        match opened {
            OpenedBox::A => self.on_a_opened,
            OpenedBox::C => self.on_c_opened,
        }
    }

    /// The box held at the end of the round.
    pub fn final_pick(&self, opened: OpenedBox) -> BoxLabel {
        match self.action(opened) {
            Action::Stay => BoxLabel::B,
            Action::Switch => opened.other().label(),
        }
    }

    /// Stable kebab-case name, the form the command line accepts.
    pub fn name(&self) -> &'static str {
        match (self.on_a_opened, self.on_c_opened) {
            (Action::Stay, Action::Stay) => "always-stay",
            (Action::Switch, Action::Switch) => "always-switch",
            (Action::Switch, Action::Stay) => "switch-iff-a",
            (Action::Stay, Action::Switch) => "switch-iff-c",
        }
    }

    pub fn mirror(&self) -> Strategy {
        Strategy::new(self.on_c_opened, self.on_a_opened)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseStrategyError;

impl fmt::Display for ParseStrategyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("strategy must be one of always-stay, always-switch, switch-iff-a, switch-iff-c")
    }
}

impl core::error::Error for ParseStrategyError {}

impl FromStr for Strategy {
    type Err = ParseStrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        enumerate_strategies()
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or(ParseStrategyError)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Strategy {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Strategy {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// What to do with ignorant-host rounds in which the keys are revealed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum VoidSemantics {
    /// Discard the round and renormalize over the empty reveals.
    #[default]
    VoidRound,
    /// Keep the round as a loss.
    CountAsLoss,
}

impl VoidSemantics {
    pub fn name(&self) -> &'static str {
        match self {
            VoidSemantics::VoidRound => "void-round",
            VoidSemantics::CountAsLoss => "count-as-loss",
        }
    }

    /// Whether a round with this reveal outcome enters the tally.
    pub fn counts(&self, found_empty: bool) -> bool {
        found_empty || *self == VoidSemantics::CountAsLoss
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WinReport {
    pub strategy: Strategy,
    pub model_name: String,
    pub win_probability: Rational,
}

impl WinReport {
    pub fn new(
        model_name: impl Into<String>,
        model: &GameModel,
        strategy: Strategy,
        semantics: VoidSemantics,
    ) -> Result<Self> {
        Ok(WinReport {
            strategy,
            model_name: model_name.into(),
            win_probability: expected_win(model, strategy, semantics)?,
        })
    }
}

/// Exact `P(win)` for `strategy`, summed over the leaves of the probability tree.
///
/// Under [`VoidSemantics::VoidRound`] leaves where the keys were revealed are
/// dropped and the remainder renormalized; under
/// [`VoidSemantics::CountAsLoss`] they stay in with no win weight.
pub fn expected_win(model: &GameModel, strategy: Strategy, semantics: VoidSemantics) -> Result<Rational> {
    let tree = build_tree(model);
    let counted = tree.paths().iter().filter(|p| semantics.counts(p.found_empty()));
    let (mut total, mut wins) = (Rational::ZERO, Rational::ZERO);
    for path in counted {
        total = total + path.weight;
        if strategy.final_pick(path.opened) == path.key_box {
            wins = wins + path.weight;
        }
    }
    if total.is_zero() {
        return Err(Error::NoValidRounds);
    }
    Ok(wins / total)
}

/// The four deterministic strategies, in tie-breaking order.
pub fn enumerate_strategies() -> [Strategy; 4] {
    [
        Strategy::ALWAYS_STAY,
        Strategy::ALWAYS_SWITCH,
        Strategy::SWITCH_IFF_A,
        Strategy::SWITCH_IFF_C,
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestStrategy {
    /// Earliest maximizer in [`enumerate_strategies`] order.
    pub strategy: Strategy,
    pub value: Rational,
    /// Every strategy attaining `value`, in enumeration order.
    pub ties: Vec<Strategy>,
}

pub fn best_strategy(model: &GameModel, semantics: VoidSemantics) -> Result<BestStrategy> {
    let scored = enumerate_strategies()
        .into_iter()
        .map(|s| expected_win(model, s, semantics).map(|v| (s, v)))
        .collect::<Result<Vec<_>>>()?;
    let value = scored.iter().map(|(_, v)| *v).max().expect("four strategies");
    let ties: Vec<Strategy> = scored
        .iter()
        .filter(|(_, v)| *v == value)
        .map(|(s, _)| *s)
        .collect();
    Ok(BestStrategy {
        strategy: ties[0],
        value,
        ties,
    })
}
