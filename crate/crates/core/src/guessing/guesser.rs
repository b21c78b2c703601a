// SPDX-License-Identifier: Apache-2.0

//! Guesser interfaces and a few simple guessers.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::listing::Listing;
use crate::baire::{Nat, Point};
use crate::error::Result;

/// Incremental evaluation of a bit guesser: `push` feeds the next fact bit
/// and returns the guess on the history so far.
pub trait BitSession: Send {
    fn push(&mut self, bit: bool) -> bool;
}

/// A deterministic map from finite bit sequences to guesses.
pub trait BitGuesser: Send + Sync {
    fn name(&self) -> String;

    fn session(&self) -> Box<dyn BitSession>;

    /// Guess on the empty history.
    fn empty_guess(&self) -> bool {
        false
    }

    fn guess(&self, bits: &[bool]) -> bool {
        let mut s = self.session();
        bits.iter().fold(self.empty_guess(), |_, &b| s.push(b))
    }

    /// A round `R` and value `v` such that the guess on the fact stream of
    /// `p` equals `v` at every round `≥ R`, when the guesser can prove one.
    fn tail_certificate(&self, _listing: &Listing, _p: &Point) -> Result<Option<(usize, bool)>> {
        Ok(None)
    }
}

/// Incremental evaluation of a move guesser.
pub trait NatSession: Send {
    fn push(&mut self, v: Nat) -> bool;
}

/// A deterministic map from finite sequences of naturals to guesses.
pub trait NatGuesser: Send + Sync {
    fn name(&self) -> String;

    fn session(&self) -> Box<dyn NatSession>;

    fn empty_guess(&self) -> bool {
        false
    }

    fn guess(&self, moves: &[Nat]) -> bool {
        let mut s = self.session();
        moves.iter().fold(self.empty_guess(), |_, &v| s.push(v))
    }
}

/// Always guesses `value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstGuesser(pub bool);

struct ConstSession(bool);

impl BitSession for ConstSession {
    fn push(&mut self, _: bool) -> bool {
        self.0
    }
}

impl NatSession for ConstSession {
    fn push(&mut self, _: Nat) -> bool {
        self.0
    }
}

impl BitGuesser for ConstGuesser {
    fn name(&self) -> String {
        format!("const-{}", u8::from(self.0))
    }

    fn session(&self) -> Box<dyn BitSession> {
        Box::new(ConstSession(self.0))
    }

    fn empty_guess(&self) -> bool {
        self.0
    }

    fn tail_certificate(&self, _: &Listing, _: &Point) -> Result<Option<(usize, bool)>> {
        Ok(Some((0, self.0)))
    }
}

impl NatGuesser for ConstGuesser {
    fn name(&self) -> String {
        format!("const-{}", u8::from(self.0))
    }

    fn session(&self) -> Box<dyn NatSession> {
        Box::new(ConstSession(self.0))
    }

    fn empty_guess(&self) -> bool {
        self.0
    }
}

type HistoryFn<T> = Arc<dyn Fn(&[T]) -> bool + Send + Sync>;

/// A guesser given by a function of the whole history. Each push replays
/// the function on the full history, so keep it for short runs or cheap
/// functions.
#[derive(Clone)]
pub struct FnGuesser<T> {
    name: String,
    f: HistoryFn<T>,
}

impl<T> FnGuesser<T> {
    pub fn new(name: &str, f: impl Fn(&[T]) -> bool + Send + Sync + 'static) -> Self {
        FnGuesser {
            name: name.to_string(),
            f: Arc::new(f),
        }
    }
}

struct FnSession<T> {
    f: HistoryFn<T>,
    history: Vec<T>,
}

impl BitSession for FnSession<bool> {
    fn push(&mut self, bit: bool) -> bool {
        self.history.push(bit);
        (self.f)(&self.history)
    }
}

impl NatSession for FnSession<Nat> {
    fn push(&mut self, v: Nat) -> bool {
        self.history.push(v);
        (self.f)(&self.history)
    }
}

impl BitGuesser for FnGuesser<bool> {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn session(&self) -> Box<dyn BitSession> {
        Box::new(FnSession {
            f: Arc::clone(&self.f),
            history: Vec::new(),
        })
    }

    fn empty_guess(&self) -> bool {
        (self.f)(&[])
    }
}

impl NatGuesser for FnGuesser<Nat> {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn session(&self) -> Box<dyn NatSession> {
        Box::new(FnSession {
            f: Arc::clone(&self.f),
            history: Vec::new(),
        })
    }

    fn empty_guess(&self) -> bool {
        (self.f)(&[])
    }
}

/// A finite-state move guesser. Moves are read as the symbol
/// `min(v, classes − 1)`; the guess is the output bit of the current state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteStateGuesser {
    pub name: String,
    pub start: usize,
    /// `next[state][symbol]`.
    pub next: Vec<Vec<usize>>,
    pub output: Vec<bool>,
}

impl FiniteStateGuesser {
    pub fn classes(&self) -> usize {
        self.next.first().map_or(1, Vec::len)
    }

    fn symbol(&self, v: Nat) -> usize {
        (v as usize).min(self.classes() - 1)
    }

    /// A random machine with `states` states over `classes` symbols.
    pub fn random(name: &str, rng: &mut impl Rng, states: usize, classes: usize) -> Self {
        FiniteStateGuesser {
            name: name.to_string(),
            start: 0,
            next: (0..states)
                .map(|_| (0..classes).map(|_| rng.gen_range(0..states)).collect())
                .collect(),
            output: (0..states).map(|_| rng.gen_bool(0.5)).collect(),
        }
    }

    /// Exact guess limit on `p`: `Some(b)` when the guesses are eventually
    /// constantly `b`, `None` when they keep changing.
    pub fn limit_on(&self, p: &Point) -> Option<bool> {
        let mut state = self.start;
        for &v in p.preamble() {
            state = self.next[state][self.symbol(v)];
        }
        // (state, phase) pairs are finite; walk until one repeats
        let per = p.period();
        let mut seen = std::collections::HashMap::new();
        let mut trail = Vec::new();
        let mut phase = 0;
        loop {
            if let Some(&start) = seen.get(&(state, phase)) {
                let cycle: Vec<bool> = trail[start..].to_vec();
                return if cycle.iter().all(|&b| b == cycle[0]) {
                    Some(cycle[0])
                } else {
                    None
                };
            }
            seen.insert((state, phase), trail.len());
            state = self.next[state][self.symbol(per[phase])];
            trail.push(self.output[state]);
            phase = (phase + 1) % per.len();
        }
    }

    /// Transition table as JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

struct FsSession {
    machine: Arc<FiniteStateGuesser>,
    state: usize,
}

impl NatSession for FsSession {
    fn push(&mut self, v: Nat) -> bool {
        let m = &self.machine;
        self.state = m.next[self.state][m.symbol(v)];
        m.output[self.state]
    }
}

impl NatGuesser for FiniteStateGuesser {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn session(&self) -> Box<dyn NatSession> {
        Box::new(FsSession {
            machine: Arc::new(self.clone()),
            state: self.start,
        })
    }

    fn empty_guess(&self) -> bool {
        self.output[self.start]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn last_move_zero() {
        let g = FnGuesser::<Nat>::new("last-is-zero", |h| h.last() == Some(&0));
        assert!(g.guess(&[3, 0]));
        assert!(!g.guess(&[0, 3]));
        assert!(!g.guess(&[]));
    }

    proptest! {
        #[test]
        fn finite_state_replay_is_pure(seed in 0u64..1000, moves in proptest::collection::vec(0u64..5, 0..40)) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = FiniteStateGuesser::random("fs", &mut rng, 3, 4);
            prop_assert_eq!(g.guess(&moves), g.guess(&moves));
            let mut s = g.session();
            let mut last = g.empty_guess();
            for (n, &v) in moves.iter().enumerate() {
                last = s.push(v);
                prop_assert_eq!(last, g.guess(&moves[..=n]));
            }
            let _ = last;
        }

        #[test]
        fn finite_state_limit_matches_long_run(seed in 0u64..500, pre in proptest::collection::vec(0u64..4, 0..4), per in proptest::collection::vec(0u64..4, 1..4)) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = FiniteStateGuesser::random("fs", &mut rng, 4, 4);
            let p = Point::new(pre, per).unwrap();
            let moves: Vec<Nat> = (0..400).map(|i| p.at(i)).collect();
            let mut s = g.session();
            let guesses: Vec<bool> = moves.iter().map(|&v| s.push(v)).collect();
            let tail = &guesses[300..];
            let constant = tail.iter().all(|&b| b == tail[0]);
            match g.limit_on(&p) {
                Some(b) => prop_assert!(constant && tail[0] == b),
                None => prop_assert!(!constant),
            }
        }
    }
}
