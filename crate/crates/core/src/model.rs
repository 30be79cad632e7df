//! Game definition: boxes, the host's behavior law, the prior over the key
//! placement and the evidence a contestant can observe.
//!
//! Boxes are laid out left to right as `A`, `B`, `C`. The contestant always
//! picks `B`; any game can be relabelled so that this holds. The reference
//! simulation script encodes the boxes as integers, `A = 0`, `B = 1`,
//! `C = 2`, which is what [`BoxLabel::index`] returns.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BoxLabel {
    A,
    B,
    C,
}

impl BoxLabel {
    pub const ALL: [BoxLabel; 3] = [BoxLabel::A, BoxLabel::B, BoxLabel::C];

    pub fn index(self) -> usize {
        match self {
            BoxLabel::A => 0,
            BoxLabel::B => 1,
            BoxLabel::C => 2,
        }
    }

    /// Swaps the left and right boxes; `B` is fixed.
    pub fn mirror(self) -> BoxLabel {
        match self {
            BoxLabel::A => BoxLabel::C,
            BoxLabel::B => BoxLabel::B,
            BoxLabel::C => BoxLabel::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            BoxLabel::A => 'A',
            BoxLabel::B => 'B',
            BoxLabel::C => 'C',
        }
    }
}

impl fmt::Display for BoxLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseBoxError;

impl fmt::Display for ParseBoxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("box must be one of A, B, C")
    }
}

impl core::error::Error for ParseBoxError {}

impl FromStr for BoxLabel {
    type Err = ParseBoxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(BoxLabel::A),
            "B" | "b" => Ok(BoxLabel::B),
            "C" | "c" => Ok(BoxLabel::C),
            _ => Err(ParseBoxError),
        }
    }
}

/// A box the host may open. The contestant's box `B` is not representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum OpenedBox {
    A,
    C,
}

impl OpenedBox {
    pub const ALL: [OpenedBox; 2] = [OpenedBox::A, OpenedBox::C];

    pub fn label(self) -> BoxLabel {
        match self {
            OpenedBox::A => BoxLabel::A,
            OpenedBox::C => BoxLabel::C,
        }
    }

    /// The other side box, i.e. the one a switching contestant moves to.
    pub fn other(self) -> OpenedBox {
        match self {
            OpenedBox::A => OpenedBox::C,
            OpenedBox::C => OpenedBox::A,
        }
    }
}

impl TryFrom<BoxLabel> for OpenedBox {
    type Error = ParseBoxError;

    fn try_from(label: BoxLabel) -> Result<Self, Self::Error> {
        match label {
            BoxLabel::A => Ok(OpenedBox::A),
            BoxLabel::C => Ok(OpenedBox::C),
            BoxLabel::B => Err(ParseBoxError),
        }
    }
}

impl fmt::Display for OpenedBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.label().fmt(f)
    }
}

/// How the host picks the box to open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HostPolicy {
    /// Knows where the keys are and never reveals them. When both side boxes
    /// are empty (keys in `B`) opens `C` with probability `bias_c` and `A`
    /// with probability `1 - bias_c`.
    Informed { bias_c: Rational },
    /// Opens `A` or `C` with probability 1/2 each, whatever the key placement.
    Ignorant,
}

impl HostPolicy {
    /// The evenhanded informed host.
    pub fn unbiased() -> Self {
        HostPolicy::Informed {
            bias_c: Rational::frac(1, 2),
        }
    }

    pub fn is_informed(&self) -> bool {
        matches!(self, HostPolicy::Informed { .. })
    }

    /// Left/right mirror image: an informed bias `p` becomes `1 - p`.
    pub fn mirror(self) -> Self {
        match self {
            HostPolicy::Informed { bias_c } => HostPolicy::Informed {
                bias_c: Rational::ONE - bias_c,
            },
            HostPolicy::Ignorant => HostPolicy::Ignorant,
        }
    }
}

/// One weight per box, indexed by [`BoxLabel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BoxWeights([Rational; 3]);

impl BoxWeights {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        BoxWeights([a, b, c])
    }

    pub fn uniform() -> Self {
        let third = Rational::frac(1, 3);
        BoxWeights([third; 3])
    }

    pub fn get(&self, label: BoxLabel) -> Rational {
        self.0[label.index()]
    }

    pub fn set(&mut self, label: BoxLabel, weight: Rational) {
        self.0[label.index()] = weight;
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BoxLabel, Rational)> + '_ {
        BoxLabel::ALL.into_iter().map(move |l| (l, self.get(l)))
    }

    pub fn mirror(&self) -> Self {
        BoxWeights([self.0[2], self.0[1], self.0[0]])
    }

    pub fn as_array(&self) -> [Rational; 3] {
        self.0
    }
}

/// The full joint law of a round: key prior, the fixed initial pick `B`, and
/// the host policy. Only constructible through [`make_model`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameModel {
    prior: BoxWeights,
    policy: HostPolicy,
}

impl GameModel {
    pub fn prior(&self) -> &BoxWeights {
        &self.prior
    }

    pub fn policy(&self) -> HostPolicy {
        self.policy
    }

    pub fn initial_pick(&self) -> BoxLabel {
        BoxLabel::B
    }

    /// The same game seen from behind the table.
    pub fn mirror(&self) -> GameModel {
        GameModel {
            prior: self.prior.mirror(),
            policy: self.policy.mirror(),
        }
    }
}

/// Validates a prior and a host policy into a [`GameModel`].
pub fn make_model(prior: BoxWeights, policy: HostPolicy) -> Result<GameModel> {
    if prior.iter().any(|(_, w)| w.is_negative()) {
        return Err(Error::NegativeWeight);
    }
    if let HostPolicy::Informed { bias_c } = policy {
        if !bias_c.is_probability() {
            return Err(Error::BiasOutOfRange);
        }
    }
    if prior.sum() != Rational::ONE {
        return Err(Error::NonNormalizedPrior);
    }
    Ok(GameModel { prior, policy })
}

/// Informed, evenhanded host with a uniform prior.
pub fn model1() -> GameModel {
    make_model(BoxWeights::uniform(), HostPolicy::unbiased()).expect("valid")
}

/// Informed host who opens `C` with probability `p` when free to choose.
pub fn model2(p: Rational) -> Result<GameModel> {
    make_model(BoxWeights::uniform(), HostPolicy::Informed { bias_c: p })
}

/// Ignorant host with a uniform prior.
pub fn model3() -> GameModel {
    make_model(BoxWeights::uniform(), HostPolicy::Ignorant).expect("valid")
}

/// The three named models, with `p` supplied for `model2`.
pub fn standard_models(p: Rational) -> Result<Vec<(&'static str, GameModel)>> {
    Ok(vec![
        ("model1", model1()),
        ("model2", model2(p)?),
        ("model3", model3()),
    ])
}

/// What the contestant sees: which side box was opened and whether it was
/// empty. An informed host only ever produces `found_empty = true`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Evidence {
    pub opened: OpenedBox,
    pub found_empty: bool,
}

impl Evidence {
    pub const ALL: [Evidence; 4] = [
        Evidence::empty(OpenedBox::A),
        Evidence::empty(OpenedBox::C),
        Evidence::revealed(OpenedBox::A),
        Evidence::revealed(OpenedBox::C),
    ];

    pub const fn new(opened: OpenedBox, found_empty: bool) -> Self {
        Evidence {
            opened,
            found_empty,
        }
    }

    pub const fn empty(opened: OpenedBox) -> Self {
        Self::new(opened, true)
    }

    pub const fn revealed(opened: OpenedBox) -> Self {
        Self::new(opened, false)
    }

    pub fn mirror(self) -> Self {
        Evidence::new(self.opened.other(), self.found_empty)
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let state = if self.found_empty { "empty" } else { "keys" };
        write!(f, "{} opened, {}", self.opened, state)
    }
}
