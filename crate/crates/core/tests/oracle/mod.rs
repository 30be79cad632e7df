//! Brute-force reference for the exact engine.
//!
//! Works directly on the model definition with boxes encoded as integers
//! (`A = 0`, `B = 1`, `C = 2`) and raw `Ratio<i128>` arithmetic. It builds no
//! probability tree and shares no code with the crate beyond reading the
//! model's prior and policy.

#![allow(dead_code)]

use monty_core::{BoxLabel, GameModel, HostPolicy, Rational};
use num_rational::Ratio;

pub type Q = Ratio<i128>;

pub fn q(r: Rational) -> Q {
    Q::new(r.numer(), r.denom())
}

pub fn same(r: Rational, x: Q) -> bool {
    r.numer() == *x.numer() && r.denom() == *x.denom()
}

/// One joint outcome of (key box, opened box).
#[derive(Debug, Clone, Copy)]
pub struct Joint {
    pub key: usize,
    pub opened: usize,
    pub weight: Q,
}

impl Joint {
    pub fn empty(&self) -> bool {
        self.key != self.opened
    }
}

fn prior(model: &GameModel, key: usize) -> Q {
    q(model.prior().get(BoxLabel::ALL[key]))
}

/// P(host opens `opened` | keys in `key`); contestant holds box 1.
fn host(policy: HostPolicy, key: usize, opened: usize) -> Q {
    let half = Q::new(1, 2);
    match policy {
        HostPolicy::Ignorant => half,
        HostPolicy::Informed { bias_c } => {
            let p = q(bias_c);
            if key == 1 {
                if opened == 2 { p } else { Q::from_integer(1) - p }
            } else if opened == 2 - key {
                Q::from_integer(1)
            } else {
                Q::from_integer(0)
            }
        }
    }
}

/// All six (key, opened) combinations, zero weights included.
pub fn joints(model: &GameModel) -> Vec<Joint> {
    let mut out = Vec::new();
    for key in 0..3 {
        for opened in [0, 2] {
            out.push(Joint { key, opened, weight: prior(model, key) * host(model.policy(), key, opened) });
        }
    }
    out
}

pub fn event(model: &GameModel, opened: usize, empty: bool) -> Q {
    joints(model)
        .iter()
        .filter(|j| j.opened == opened && j.empty() == empty)
        .fold(Q::from_integer(0), |acc, j| acc + j.weight)
}

pub fn posterior(model: &GameModel, opened: usize, empty: bool, hypothesis: usize) -> Option<Q> {
    let total = event(model, opened, empty);
    if total == Q::from_integer(0) {
        return None;
    }
    let hit = joints(model)
        .iter()
        .filter(|j| j.opened == opened && j.empty() == empty && j.key == hypothesis)
        .fold(Q::from_integer(0), |acc, j| acc + j.weight);
    Some(hit / total)
}

/// `switch_on[k]`: whether to switch after the host opens box `k` (0 or 2).
/// Switching from box 1 after `opened` lands on `2 - opened`.
pub fn expected_win(model: &GameModel, switch_on_a: bool, switch_on_c: bool, void_revealed: bool) -> Option<Q> {
    let mut total = Q::from_integer(0);
    let mut wins = Q::from_integer(0);
    for j in joints(model) {
        if void_revealed && !j.empty() {
            continue;
        }
        total += j.weight;
        let switch = if j.opened == 0 { switch_on_a } else { switch_on_c };
        let last = if switch { 2 - j.opened } else { 1 };
        if last == j.key {
            wins += j.weight;
        }
    }
    (total != Q::from_integer(0)).then(|| wins / total)
}
