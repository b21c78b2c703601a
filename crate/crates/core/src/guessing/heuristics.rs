// SPDX-License-Identifier: Apache-2.0

//! A fixed family of cheap move guessers, mostly aimed at "eventually zero".

use std::sync::Arc;

use super::guesser::{NatGuesser, NatSession};
use crate::baire::Nat;

/// Running statistics of a move history.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub len: u64,
    pub zeros: u64,
    /// Trailing run of zeros.
    pub run: u64,
    /// Longest zero run that has already ended.
    pub best_closed_run: u64,
    /// Trailing run of equal values.
    pub same_run: u64,
    pub last: Option<Nat>,
    pub sum: u128,
    pub max: Nat,
}

impl Stats {
    pub fn push(&mut self, v: Nat) {
        if v == 0 {
            self.zeros += 1;
            self.run += 1;
        } else {
            self.best_closed_run = self.best_closed_run.max(self.run);
            self.run = 0;
        }
        self.same_run = if self.last == Some(v) { self.same_run + 1 } else { 1 };
        self.last = Some(v);
        self.len += 1;
        self.sum += u128::from(v);
        self.max = self.max.max(v);
    }

    pub fn nonzero(&self) -> u64 {
        self.len - self.zeros
    }
}

type Rule = fn(&Stats) -> bool;

/// A guesser whose answer is a function of [`Stats`].
#[derive(Clone)]
pub struct Heuristic {
    name: &'static str,
    rule: Rule,
}

struct HeuristicSession {
    stats: Stats,
    rule: Rule,
}

impl NatSession for HeuristicSession {
    fn push(&mut self, v: Nat) -> bool {
        self.stats.push(v);
        (self.rule)(&self.stats)
    }
}

impl NatGuesser for Heuristic {
    fn name(&self) -> String {
        self.name.to_string()
    }

    fn session(&self) -> Box<dyn NatSession> {
        Box::new(HeuristicSession {
            stats: Stats::default(),
            rule: self.rule,
        })
    }

    fn empty_guess(&self) -> bool {
        (self.rule)(&Stats::default())
    }
}

fn log2_ceil(n: u64) -> u64 {
    u64::from(64 - n.leading_zeros())
}

const RULES: [(&str, Rule); 20] = [
    ("last-is-zero", |s| s.run >= 1),
    ("last-two-zero", |s| s.run >= 2),
    ("last-three-zero", |s| s.run >= 3),
    ("last-five-zero", |s| s.run >= 5),
    ("last-ten-zero", |s| s.run >= 10),
    ("majority-zero", |s| 2 * s.zeros > s.len),
    ("mostly-zero", |s| s.len > 0 && 10 * s.zeros >= 9 * s.len),
    ("zero-run-half", |s| s.len > 0 && 2 * s.run >= s.len),
    ("zero-run-quarter", |s| s.len > 0 && 4 * s.run >= s.len),
    ("zero-run-sqrt", |s| s.len > 0 && s.run * s.run >= s.len),
    ("zero-run-log", |s| s.run > log2_ceil(s.len)),
    ("few-nonzero", |s| s.nonzero() <= 3),
    ("sparse-nonzero", |s| s.nonzero() * s.nonzero() <= s.len),
    ("always-one", |_| true),
    ("always-zero", |_| false),
    ("even-nonzero", |s| s.nonzero() % 2 == 0),
    ("repeating", |s| s.same_run >= 2),
    ("below-mean", |s| s.last.is_some_and(|v| u128::from(v) * u128::from(s.len) <= s.sum)),
    ("record-run", |s| s.run > s.best_closed_run),
    ("run-beats-nonzero", |s| s.run > 0 && s.run >= s.nonzero()),
];

/// The twenty bundled heuristics, in a fixed order.
pub fn heuristics() -> Vec<Arc<Heuristic>> {
    RULES
        .iter()
        .map(|&(name, rule)| Arc::new(Heuristic { name, rule }))
        .collect()
}

/// Looks a heuristic up by name.
pub fn heuristic(name: &str) -> Option<Arc<Heuristic>> {
    heuristics().into_iter().find(|h| h.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_distinct_names() {
        let hs = heuristics();
        assert_eq!(hs.len(), 20);
        let names: std::collections::HashSet<_> = hs.iter().map(|h| h.name()).collect();
        assert_eq!(names.len(), 20);
    }

    #[test]
    fn session_matches_stats_replay() {
        let moves = [0, 3, 0, 0, 1, 0, 0, 0, 2, 2, 0];
        for h in heuristics() {
            let mut s = h.session();
            let mut stats = Stats::default();
            for &v in &moves {
                stats.push(v);
                assert_eq!(s.push(v), (h.rule)(&stats), "{}", h.name);
            }
        }
    }

    #[test]
    fn last_is_zero() {
        let h = heuristic("last-is-zero").unwrap();
        assert!(h.guess(&[3, 0]));
        assert!(!h.guess(&[0, 3]));
        assert!(!h.guess(&[]));
    }
}
