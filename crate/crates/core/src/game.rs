// SPDX-License-Identifier: Apache-2.0

//! The guessing game: Alice plays a fixed point, Bob guesses after every
//! round. Traces report evidence at a finite horizon, never a winner.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::baire::{Nat, Point, Prefix};
use crate::borel::CatalogSet;
use crate::error::{Error, Result};
use crate::guessing::{undecided, BitGuesser, Listing, NatGuesser};

/// What Bob is told each round.
#[derive(Clone, Debug)]
pub enum GameMode {
    /// Alice's move.
    Prefix,
    /// Whether the next sentence of the listing holds.
    Fact(Arc<Listing>),
}

#[derive(Clone, Debug)]
pub struct GameConfig {
    pub mode: GameMode,
    pub rounds: usize,
    /// A trailing constant run at least this long counts as stabilized.
    pub window: usize,
    /// Evaluator fuel for fact bits.
    pub fuel: usize,
}

impl GameConfig {
    pub fn new(mode: GameMode, rounds: usize, window: usize, fuel: usize) -> Result<Self> {
        if window == 0 || window > rounds {
            return Err(Error::Guessing(format!(
                "need rounds ≥ window ≥ 1, got rounds {rounds}, window {window}"
            )));
        }
        Ok(GameConfig {
            mode,
            rounds,
            window,
            fuel,
        })
    }
}

#[derive(Clone)]
pub enum Bob {
    Moves(Arc<dyn NatGuesser>),
    Facts(Arc<dyn BitGuesser>),
}

impl Bob {
    pub fn name(&self) -> String {
        match self {
            Bob::Moves(g) => g.name(),
            Bob::Facts(g) => g.name(),
        }
    }
}

impl fmt::Debug for Bob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bob({})", self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    /// Alice's move, or the fact bit as 0/1.
    pub input: Nat,
    pub guess: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameTrace {
    pub records: Vec<RoundRecord>,
    pub flips: usize,
    pub stabilization_index: Option<usize>,
    pub final_guess: Option<u8>,
    pub window: usize,
    /// Why the run stopped early, if it did.
    pub aborted: Option<String>,
}

impl GameTrace {
    fn from_records(records: Vec<RoundRecord>, window: usize, aborted: Option<String>) -> Self {
        let flips = records.windows(2).filter(|w| w[0].guess != w[1].guess).count();
        let final_guess = records.last().map(|r| r.guess);
        let stabilization_index = final_guess.and_then(|g| {
            let run = records.iter().rev().take_while(|r| r.guess == g).count();
            (run >= window).then(|| records.len() - run)
        });
        GameTrace {
            records,
            flips,
            stabilization_index,
            final_guess,
            window,
            aborted,
        }
    }

    /// One JSON object per round, then a summary line.
    pub fn to_json_lines(&self, verdict: Option<Adjudication>) -> String {
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Summary<'a> {
            flips: usize,
            stabilization_index: Option<usize>,
            final_guess: Option<u8>,
            window: usize,
            verdict: Option<Adjudication>,
            aborted: &'a Option<String>,
        }
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("plain data serializes"));
            out.push('\n');
        }
        let summary = Summary {
            flips: self.flips,
            stabilization_index: self.stabilization_index,
            final_guess: self.final_guess,
            window: self.window,
            verdict,
            aborted: &self.aborted,
        };
        out.push_str(&serde_json::to_string(&summary).expect("plain data serializes"));
        out.push('\n');
        out
    }
}

pub fn run_game(alice: &Point, bob: &Bob, cfg: &GameConfig) -> Result<GameTrace> {
    let mut records = Vec::with_capacity(cfg.rounds);
    let mut aborted = None;
    match (&cfg.mode, bob) {
        (GameMode::Prefix, Bob::Moves(g)) => {
            let mut s = g.session();
            for round in 0..cfg.rounds {
                let v = alice.at(round);
                let guess = u8::from(s.push(v));
                records.push(RoundRecord { round, input: v, guess });
            }
        }
        (GameMode::Fact(listing), Bob::Facts(g)) => {
            let mut s = g.session();
            for round in 0..cfg.rounds {
                let b = match listing.bit_with_fuel(round, alice, cfg.fuel) {
                    Ok(b) => b,
                    Err(e) if undecided(&e) => {
                        aborted = Some(format!("fact {round} undecided: {e}"));
                        break;
                    }
                    Err(e) => return Err(e),
                };
                let guess = u8::from(s.push(b));
                records.push(RoundRecord {
                    round,
                    input: Nat::from(b),
                    guess,
                });
            }
        }
        (GameMode::Prefix, Bob::Facts(_)) => {
            return Err(Error::Guessing("the prefix game needs a move guesser".into()))
        }
        (GameMode::Fact(_), Bob::Moves(_)) => {
            return Err(Error::Guessing("the fact game needs a fact guesser".into()))
        }
    }
    Ok(GameTrace::from_records(records, cfg.window, aborted))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Adjudication {
    #[serde(rename = "CONSISTENT-WIN-BOB")]
    ConsistentWinBob,
    #[serde(rename = "CONSISTENT-WIN-ALICE")]
    ConsistentWinAlice,
    #[serde(rename = "UNSTABLE-AT-HORIZON")]
    UnstableAtHorizon,
}

impl fmt::Display for Adjudication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Adjudication::ConsistentWinBob => "CONSISTENT-WIN-BOB",
            Adjudication::ConsistentWinAlice => "CONSISTENT-WIN-ALICE",
            Adjudication::UnstableAtHorizon => "UNSTABLE-AT-HORIZON",
        })
    }
}

/// Labels a trace against the true membership of Alice's point.
pub fn adjudicate(trace: &GameTrace, truth: bool) -> Adjudication {
    match (trace.stabilization_index, trace.final_guess) {
        (Some(_), Some(g)) if (g == 1) == truth => Adjudication::ConsistentWinBob,
        (Some(_), Some(_)) => Adjudication::ConsistentWinAlice,
        _ => Adjudication::UnstableAtHorizon,
    }
}

/// Consecutive moves per phase before Bob is declared non-responsive.
pub const PHASE_CAP: usize = 500;

/// A tail Alice can keep playing on which Bob's answer is wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WrongAnswer {
    /// The repeated block Alice was playing.
    pub extension: Vec<Nat>,
    pub in_target: bool,
    pub guess: u8,
    /// Moves of the block played with Bob's guess unchanged.
    pub held_for: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AdversaryReport {
    pub guesser: String,
    pub target: String,
    pub prefix: Vec<Nat>,
    pub guesses: Vec<u8>,
    pub flips: usize,
    pub fuel_spent: usize,
    pub wrong_answer: Option<WrongAnswer>,
}

impl AdversaryReport {
    pub fn defeated(&self, min_flips: usize) -> bool {
        self.flips >= min_flips || self.wrong_answer.is_some()
    }
}

/// Builds a prefix against `bob`: plays the in-set block until Bob guesses
/// 1, then the out-of-set block until he guesses 0, and repeats. Each move
/// costs one unit of fuel.
pub fn diagonalize(bob: &dyn NatGuesser, target: &CatalogSet, fuel: usize) -> Result<AdversaryReport> {
    diagonalize_with_cap(bob, target, fuel, PHASE_CAP)
}

pub fn diagonalize_with_cap(
    bob: &dyn NatGuesser,
    target: &CatalogSet,
    fuel: usize,
    cap: usize,
) -> Result<AdversaryReport> {
    // (block keeping the point in the set, block pushing it out)
    let (inside, outside): (Vec<Nat>, Vec<Nat>) = match target {
        CatalogSet::EventuallyZero => (vec![0], vec![1]),
        CatalogSet::EventuallyConstant => (vec![0], vec![1, 0]),
        other => {
            return Err(Error::Guessing(format!("no flip strategy for {other}")));
        }
    };
    let mut s = bob.session();
    let mut prefix = Prefix::empty();
    let mut guesses: Vec<u8> = Vec::new();
    let mut wrong_answer = None;
    let mut want = true;
    'outer: while guesses.len() < fuel {
        let block = if want { &inside } else { &outside };
        let mut held = 0;
        loop {
            if guesses.len() >= fuel {
                break 'outer;
            }
            let v = block[held % block.len()];
            prefix.push(v);
            let g = s.push(v);
            guesses.push(u8::from(g));
            held += 1;
            if g == want {
                break;
            }
            if held >= cap {
                wrong_answer = Some(WrongAnswer {
                    extension: block.clone(),
                    in_target: want,
                    guess: u8::from(g),
                    held_for: held,
                });
                break 'outer;
            }
        }
        want = !want;
    }
    let flips = guesses.windows(2).filter(|w| w[0] != w[1]).count();
    Ok(AdversaryReport {
        guesser: bob.name(),
        target: target.to_string(),
        fuel_spent: guesses.len(),
        prefix: prefix.items().to_vec(),
        guesses,
        flips,
        wrong_answer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guessing::{ConstGuesser, FnGuesser};

    fn pt(pre: &[Nat], per: &[Nat]) -> Point {
        Point::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    fn prefix_cfg(rounds: usize, window: usize) -> GameConfig {
        GameConfig::new(GameMode::Prefix, rounds, window, 100).unwrap()
    }

    #[test]
    fn constant_bob() {
        let t = run_game(&pt(&[5], &[1, 2]), &Bob::Moves(Arc::new(ConstGuesser(true))), &prefix_cfg(10, 5)).unwrap();
        assert_eq!(t.flips, 0);
        assert_eq!(t.final_guess, Some(1));
        assert_eq!(t.stabilization_index, Some(0));
    }

    #[test]
    fn counter_stabilizes_immediately() {
        let g = FnGuesser::<Nat>::new("one-zero", |h| h.iter().filter(|&&v| v == 0).count() == 1);
        let t = run_game(&pt(&[0], &[7]), &Bob::Moves(Arc::new(g)), &prefix_cfg(50, 10)).unwrap();
        assert_eq!(t.stabilization_index, Some(0));
        assert_eq!(t.final_guess, Some(1));
        assert_eq!(adjudicate(&t, true), Adjudication::ConsistentWinBob);
        assert_eq!(adjudicate(&t, false), Adjudication::ConsistentWinAlice);
    }

    #[test]
    fn alternating_is_unstable() {
        let g = FnGuesser::<Nat>::new("parity", |h| h.len() % 2 == 0);
        let t = run_game(&pt(&[], &[0]), &Bob::Moves(Arc::new(g)), &prefix_cfg(20, 2)).unwrap();
        assert_eq!(t.flips, 19);
        assert_eq!(t.stabilization_index, None);
        assert_eq!(adjudicate(&t, true), Adjudication::UnstableAtHorizon);
    }

    #[test]
    fn mode_mismatch_is_rejected() {
        assert!(run_game(&pt(&[], &[0]), &Bob::Facts(Arc::new(ConstGuesser(true))), &prefix_cfg(5, 1)).is_err());
        assert!(GameConfig::new(GameMode::Prefix, 3, 4, 0).is_err());
    }

    #[test]
    fn json_lines_shape() {
        let t = run_game(&pt(&[], &[0]), &Bob::Moves(Arc::new(ConstGuesser(false))), &prefix_cfg(3, 1)).unwrap();
        let text = t.to_json_lines(Some(adjudicate(&t, true)));
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], r#"{"round":0,"input":0,"guess":0}"#);
        assert!(lines[3].contains(r#""stabilizationIndex":0"#));
        assert!(lines[3].contains(r#""verdict":"CONSISTENT-WIN-ALICE""#));
    }

    #[test]
    fn adversary_flips_last_is_zero() {
        let g = FnGuesser::<Nat>::new("last-is-zero", |h| h.last() == Some(&0));
        let r = diagonalize(&g, &CatalogSet::EventuallyZero, 1000).unwrap();
        assert!(r.flips >= 10);
        // replay oracle
        let replay: Vec<u8> = (1..=r.prefix.len()).map(|n| u8::from(g.guess(&r.prefix[..n]))).collect();
        assert_eq!(replay, r.guesses);
    }

    #[test]
    fn adversary_notes_constant_bobs() {
        let r = diagonalize(&ConstGuesser(false), &CatalogSet::EventuallyZero, 10_000).unwrap();
        assert_eq!(r.flips, 0);
        let w = r.wrong_answer.unwrap();
        assert_eq!((w.extension, w.in_target, w.guess), (vec![0], true, 0));
        let r = diagonalize(&ConstGuesser(true), &CatalogSet::EventuallyZero, 10_000).unwrap();
        let w = r.wrong_answer.unwrap();
        assert_eq!((w.extension, w.in_target, w.guess), (vec![1], false, 1));
    }
}
