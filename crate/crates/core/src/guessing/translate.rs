// SPDX-License-Identifier: Apache-2.0

//! Translations between move guessers and fact guessers.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::guesser::{BitGuesser, BitSession, NatGuesser, NatSession};
use super::listing::Listing;
use crate::baire::{Nat, Prefix};
use crate::logic::Signature;

/// Guesses of an inner guesser, released one per outer move.
///
/// One outer move can reveal several inner moves at once. Releasing only the
/// newest guess would subsample the inner sequence and could invent a limit,
/// so every change is queued and released in order. Repeats are collapsed,
/// which keeps the queue as long as the number of pending changes.
#[derive(Default)]
struct Backlog {
    queue: VecDeque<bool>,
    current: Option<bool>,
}

impl Backlog {
    fn feed(&mut self, b: bool) {
        if self.queue.back().copied().or(self.current) != Some(b) {
            self.queue.push_back(b);
        }
    }

    fn release(&mut self) -> Option<bool> {
        if let Some(b) = self.queue.pop_front() {
            self.current = Some(b);
        }
        self.current
    }
}

/// A fact guesser built from a move guesser: it reads the longest run
/// `f(0̄) = n̄₀, …, f(k̄) = n̄ₖ` of atoms that have appeared and feeds it to
/// `g0`. Each fact releases the next pending change of `g0`'s guess, so the
/// output is `g0`'s guess sequence with repeats. With no run yet, or
/// contradictory atoms, it answers 0.
pub struct AppearsGuesser {
    g0: Arc<dyn NatGuesser>,
    listing: Arc<Listing>,
}

struct AppearsSession {
    listing: Arc<Listing>,
    inner: Box<dyn NatSession>,
    next: usize,
    known: HashMap<Nat, Nat>,
    run: Nat,
    backlog: Backlog,
    contradictory: bool,
}

impl BitSession for AppearsSession {
    fn push(&mut self, bit: bool) -> bool {
        let i = self.next;
        self.next += 1;
        if bit {
            if let Some((k, v)) = self.listing.atom(i) {
                match self.known.insert(k, v) {
                    Some(old) if old != v => self.contradictory = true,
                    _ => {}
                }
            }
        }
        while let Some(&v) = self.known.get(&self.run) {
            self.backlog.feed(self.inner.push(v));
            self.run += 1;
        }
        let out = self.backlog.release();
        !self.contradictory && out == Some(true)
    }
}

impl BitGuesser for AppearsGuesser {
    fn name(&self) -> String {
        format!("appears({})", self.g0.name())
    }

    fn session(&self) -> Box<dyn BitSession> {
        Box::new(AppearsSession {
            listing: Arc::clone(&self.listing),
            inner: self.g0.session(),
            next: 0,
            known: HashMap::new(),
            run: 0,
            backlog: Backlog::default(),
            contradictory: false,
        })
    }
}

/// The fact guesser for `g0`, over the atoms listing.
pub fn prefix_to_sentence_guesser(
    sig: Arc<Signature>,
    g0: Arc<dyn NatGuesser>,
) -> (Arc<AppearsGuesser>, Arc<Listing>) {
    let listing = Arc::new(Listing::atoms(sig));
    let g = Arc::new(AppearsGuesser {
        g0,
        listing: Arc::clone(&listing),
    });
    (g, listing)
}

/// A move guesser built from a fact guesser: on a prefix `s` it takes the
/// largest `k` with `φ₀, …, φₖ` all determined by `s` and feeds their
/// values to `g`. Each move releases the next pending change of `g`'s
/// guess; with no determined sentence it answers 0.
pub struct DeterminedGuesser {
    g: Arc<dyn BitGuesser>,
    listing: Arc<Listing>,
}

struct DeterminedSession {
    listing: Arc<Listing>,
    inner: Box<dyn BitSession>,
    prefix: Prefix,
    determined: usize,
    backlog: Backlog,
}

impl NatSession for DeterminedSession {
    fn push(&mut self, v: Nat) -> bool {
        self.prefix.push(v);
        // an undecidable or erroring sentence blocks further progress
        while let Ok(Some(b)) = self.listing.determined(self.determined, &self.prefix) {
            self.backlog.feed(self.inner.push(b));
            self.determined += 1;
        }
        self.backlog.release() == Some(true)
    }
}

impl NatGuesser for DeterminedGuesser {
    fn name(&self) -> String {
        format!("determined({})", self.g.name())
    }

    fn session(&self) -> Box<dyn NatSession> {
        Box::new(DeterminedSession {
            listing: Arc::clone(&self.listing),
            inner: self.g.session(),
            prefix: Prefix::empty(),
            determined: 0,
            backlog: Backlog::default(),
        })
    }
}

pub fn sentence_to_prefix_guesser(g: Arc<dyn BitGuesser>, listing: Arc<Listing>) -> Arc<DeterminedGuesser> {
    Arc::new(DeterminedGuesser { g, listing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baire::Point;
    use crate::guessing::{ConstGuesser, FnGuesser};

    fn sig() -> Arc<Signature> {
        Arc::new(Signature::standard())
    }

    #[test]
    fn constant_one_translates() {
        let (g, listing) = prefix_to_sentence_guesser(sig(), Arc::new(ConstGuesser(true)));
        let p = Point::new(vec![], vec![2, 1]).unwrap();
        let bits = listing.bits(&p, 300).unwrap();
        let mut s = g.session();
        let guesses: Vec<bool> = bits.iter().map(|&b| s.push(b)).collect();
        assert!(guesses[250..].iter().all(|&b| b));
    }

    #[test]
    fn no_facts_yet_means_zero() {
        let (g, _) = prefix_to_sentence_guesser(sig(), Arc::new(ConstGuesser(true)));
        // φ₀ is f(0)=0; on a point with f(0) ≠ 0 nothing about f(0) has appeared
        assert!(!g.guess(&[false]));
        assert!(!g.guess(&[]));
    }

    #[test]
    fn last_move_zero_limit() {
        let g0 = Arc::new(FnGuesser::<Nat>::new("last-is-zero", |h| h.last() == Some(&0)));
        let (g, listing) = prefix_to_sentence_guesser(sig(), g0);
        let p = Point::constant(0);
        let bits = listing.bits(&p, 200).unwrap();
        assert!(g.guess(&bits));
    }

    #[test]
    fn burst_keeps_every_change() {
        let mut b = Backlog::default();
        for x in [true, true, false, true] {
            b.feed(x);
        }
        let out: Vec<_> = (0..4).map(|_| b.release()).collect();
        assert_eq!(out, [Some(true), Some(false), Some(true), Some(true)]);
    }

    #[test]
    fn determined_guesser_defaults() {
        let listing = Arc::new(Listing::atoms(sig()));
        let back = sentence_to_prefix_guesser(Arc::new(ConstGuesser(true)), listing);
        assert!(!back.guess(&[]));
        assert!(back.guess(&[4]));
    }
}
