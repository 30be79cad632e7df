//! Interactive rounds against the host.
//!
//! The session is driven by any `BufRead`/`Write` pair so that a seeded game
//! replays identically from a recorded input. Rounds in which an ignorant host
//! reveals the keys are announced void and not counted.

use std::io::{self, BufRead, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use monty_core::montecarlo::RoundSampler;
use monty_core::{build_tree, BoxLabel, Evidence, GameModel, ShardPlan};

pub fn clock_seed() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PlaySummary {
    pub rounds: u64,
    pub wins: u64,
    pub void_rounds: u64,
    pub stay_plays: u64,
    pub stay_wins: u64,
    pub switch_plays: u64,
    pub switch_wins: u64,
}

fn rate(wins: u64, plays: u64) -> String {
    if plays == 0 {
        "-".into()
    } else {
        format!("{:.3}", wins as f64 / plays as f64)
    }
}

enum Choice {
    Stay,
    Switch,
    Quit,
}

/// Reads until a valid answer; `None` at end of input.
fn read_choice<R: BufRead + ?Sized, W: Write + ?Sized>(input: &mut R, out: &mut W) -> io::Result<Option<Choice>> {
    let mut line = String::new();
    loop {
        write!(out, "> ")?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(None);
        }
        match line.trim().to_ascii_lowercase().as_str() {
            "stay" | "s" => return Ok(Some(Choice::Stay)),
            "switch" | "w" => return Ok(Some(Choice::Switch)),
            "quit" | "q" => return Ok(Some(Choice::Quit)),
            _ => writeln!(out, "Please type stay, switch or quit.")?,
        }
    }
}

pub fn session<R: BufRead + ?Sized, W: Write + ?Sized>(
    model: &GameModel,
    seed: u64,
    input: &mut R,
    out: &mut W,
) -> io::Result<PlaySummary> {
    let sampler = RoundSampler::new(model);
    let tree = build_tree(model);
    let mut rng = ShardPlan::new(1, seed, 1).expect("one trial, one shard").shard_rng(0);
    let mut summary = PlaySummary::default();
    writeln!(out, "Seed {seed}. One of the boxes A, B, C holds the keys; you hold box B.")?;

    loop {
        let key_box = sampler.sample_key(&mut rng);
        let opened = sampler.sample_opened(key_box, &mut rng);
        let round = summary.rounds + summary.void_rounds + 1;
        if key_box == opened.label() {
            summary.void_rounds += 1;
            writeln!(out, "Round {round}: Monty opens box {opened}: the keys are inside! Round void, not counted.")?;
            continue;
        }

        let evidence = Evidence::empty(opened);
        let target = opened.other().label();
        writeln!(out, "Round {round}: Monty opens box {opened}: it's empty!")?;
        writeln!(out, "Stay with B or switch to {target}? [stay/switch/quit]")?;
        let choice = match read_choice(input, out)? {
            None | Some(Choice::Quit) => break,
            Some(c) => c,
        };
        let (final_pick, switched) = match choice {
            Choice::Switch => (target, true),
            _ => (BoxLabel::B, false),
        };
        let won = final_pick == key_box;
        summary.rounds += 1;
        summary.wins += u64::from(won);
        if switched {
            summary.switch_plays += 1;
            summary.switch_wins += u64::from(won);
        } else {
            summary.stay_plays += 1;
            summary.stay_wins += u64::from(won);
        }
        let verb = if switched { "switch to" } else { "keep" };
        let result = if won { "you win!" } else { "you lose." };
        writeln!(out, "You {verb} {final_pick}. The keys were in {key_box}: {result}")?;

        let posterior = tree
            .posterior(evidence, target)
            .expect("observed evidence has positive probability");
        writeln!(
            out,
            "rounds {} | wins {} | switch {}/{} ({}) | stay {}/{} ({}) | exact P({target} | {evidence}) = {posterior}",
            summary.rounds,
            summary.wins,
            summary.switch_wins,
            summary.switch_plays,
            rate(summary.switch_wins, summary.switch_plays),
            summary.stay_wins,
            summary.stay_plays,
            rate(summary.stay_wins, summary.stay_plays),
        )?;
    }

    writeln!(
        out,
        "Goodbye: {} rounds, {} wins, {} void.",
        summary.rounds, summary.wins, summary.void_rounds
    )?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use monty_core::{model1, model3};

    fn play(model: &GameModel, seed: u64, script: &str) -> (PlaySummary, String) {
        let mut out = Vec::new();
        let summary = session(model, seed, &mut script.as_bytes(), &mut out).unwrap();
        (summary, String::from_utf8(out).unwrap())
    }

    #[test]
    fn status_line_shows_exact_posterior() {
        let (summary, text) = play(&model1(), 4, "switch\nstay\nswitch\n");
        assert_eq!(summary.rounds, 3);
        assert_eq!(summary.switch_plays, 2);
        assert_eq!(summary.stay_plays, 1);
        let status: Vec<_> = text.lines().filter(|l| l.starts_with("rounds ")).collect();
        assert_eq!(status.len(), 3);
        assert!(status.iter().all(|l| l.ends_with("= 2/3")));
        assert!(status[2].starts_with("rounds 3 | wins "));
    }

    #[test]
    fn seeded_sessions_replay() {
        let script = "w\ns\nbogus\nw\nw\ns\nq\n";
        assert_eq!(play(&model3(), 9, script), play(&model3(), 9, script));
        assert_ne!(play(&model3(), 9, script).1, play(&model3(), 10, script).1);
    }

    #[test]
    fn ignorant_host_voids_revealing_rounds() {
        let (summary, text) = play(&model3(), 1, &"switch\n".repeat(30));
        assert!(summary.void_rounds > 0);
        assert_eq!(summary.rounds, 30);
        assert_eq!(text.matches("Round void, not counted.").count() as u64, summary.void_rounds);
        assert!(text.lines().filter(|l| l.starts_with("rounds ")).all(|l| l.ends_with("= 1/2")));
    }

    #[test]
    fn end_of_input_exits_gracefully() {
        let (summary, text) = play(&model1(), 2, "");
        assert_eq!(summary.rounds, 0);
        assert!(text.ends_with("Goodbye: 0 rounds, 0 wins, 0 void.\n"));
    }
}
