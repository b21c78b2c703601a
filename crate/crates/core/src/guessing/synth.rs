// SPDX-License-Identifier: Apache-2.0

//! The μ/ν guesser for a set given by a Δ′ pair.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::guesser::{BitGuesser, BitSession};
use super::listing::{Listing, Role};
use crate::baire::{Nat, Point};
use crate::borel::{member, DeltaPrimePair, Verdict};
use crate::error::{Error, Result};
use crate::logic::{Enumeration, Signature};

/// Rows searched for a certificate witness.
const WITNESS_ROWS: Nat = 32;
/// Facts simulated while looking for the certified tail.
const TAIL_ROUNDS: usize = 1_000_000;

/// A Δ′ pair plus the listing knobs.
#[derive(Clone, Debug)]
pub struct SynthesisSpec {
    pub pair: DeltaPrimePair,
    /// Fragment and class of the canonical sentences at odd positions.
    pub enumeration: Enumeration,
    /// Evaluator fuel for fact bits.
    pub fuel: usize,
}

impl SynthesisSpec {
    pub fn new(pair: DeltaPrimePair) -> Self {
        SynthesisSpec {
            pair,
            enumeration: Enumeration::atomic(),
            fuel: 1000,
        }
    }
}

/// Guesses 1 iff μ < ν, where μ is the least row of the `⋃⋂` form no
/// `¬σ_xy` of which has appeared and ν the least row of the `⋂⋃` form no
/// `τ_xy` of which has appeared.
pub struct MuNuGuesser {
    listing: Arc<Listing>,
}

/// One round of a μ/ν run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuNuStep {
    pub mu: Nat,
    pub nu: Nat,
    pub guess: bool,
}

pub(crate) struct MuNuSession {
    listing: Arc<Listing>,
    bits: Vec<bool>,
    killed_mu: Vec<bool>,
    killed_nu: Vec<bool>,
    mu: Nat,
    nu: Nat,
}

fn kill(flags: &mut Vec<bool>, x: Nat, ptr: &mut Nat) {
    let x = x as usize;
    if flags.len() <= x {
        flags.resize(x + 1, false);
    }
    flags[x] = true;
    while flags.get(*ptr as usize).copied().unwrap_or(false) {
        *ptr += 1;
    }
}

impl MuNuSession {
    fn step(&mut self, bit: bool) -> MuNuStep {
        let i = self.bits.len();
        self.bits.push(bit);
        for (role, idx) in self.listing.events(i) {
            if !self.bits[idx] {
                continue;
            }
            match role {
                Role::KillMu(x) => kill(&mut self.killed_mu, x, &mut self.mu),
                Role::KillNu(x) => kill(&mut self.killed_nu, x, &mut self.nu),
            }
        }
        MuNuStep {
            mu: self.mu,
            nu: self.nu,
            guess: self.mu < self.nu,
        }
    }
}

impl BitSession for MuNuSession {
    fn push(&mut self, bit: bool) -> bool {
        self.step(bit).guess
    }
}

impl MuNuGuesser {
    pub fn listing(&self) -> &Arc<Listing> {
        &self.listing
    }

    pub(crate) fn mu_nu_session(&self) -> MuNuSession {
        MuNuSession {
            listing: Arc::clone(&self.listing),
            bits: Vec::new(),
            killed_mu: Vec::new(),
            killed_nu: Vec::new(),
            mu: 0,
            nu: 0,
        }
    }

    /// μ, ν and the guess for the first `rounds` facts on `p`.
    pub fn trace(&self, p: &Point, rounds: usize) -> Result<Vec<MuNuStep>> {
        let mut s = self.mu_nu_session();
        let mut out = Vec::with_capacity(rounds);
        for i in 0..rounds {
            out.push(s.step(self.listing.bit(i, p)?));
        }
        Ok(out)
    }

    /// Least row `x` of the `⋃⋂` form all of whose codes contain `p`, among
    /// rows whose membership decides exactly.
    pub fn union_witness(&self, p: &Point) -> Result<Option<Nat>> {
        self.witness(p, true)
    }

    /// Least row `x` of the `⋂⋃` form none of whose codes contain `p`.
    pub fn intersection_witness(&self, p: &Point) -> Result<Option<Nat>> {
        self.witness(p, false)
    }

    fn witness(&self, p: &Point, union_side: bool) -> Result<Option<Nat>> {
        let d = self.listing.pair().expect("synthesis listing");
        let form = if union_side { &d.union_form } else { &d.intersection_form };
        let want = if union_side { Verdict::In } else { Verdict::Out };
        for x in 0..WITNESS_ROWS {
            let row = form.child(x).expect("indexed rows");
            if member(self.listing.signature(), &row, p, 0)? == want {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

impl BitGuesser for MuNuGuesser {
    fn name(&self) -> String {
        "mu-nu".into()
    }

    fn session(&self) -> Box<dyn BitSession> {
        Box::new(self.mu_nu_session())
    }

    /// With a `⋃⋂` witness row `x`, μ ≤ x forever, so once ν > x the guess
    /// stays 1. With a `⋂⋃` witness row `x`, ν ≤ x forever, so once μ > x
    /// the guess stays 0.
    fn tail_certificate(&self, listing: &Listing, p: &Point) -> Result<Option<(usize, bool)>> {
        if !std::ptr::eq(listing, Arc::as_ptr(&self.listing)) {
            return Ok(None);
        }
        let (x, value) = match (self.union_witness(p)?, self.intersection_witness(p)?) {
            (Some(x), _) => (x, true),
            (None, Some(x)) => (x, false),
            (None, None) => return Ok(None),
        };
        let mut s = self.mu_nu_session();
        for round in 0..TAIL_ROUNDS {
            let step = s.step(listing.bit(round, p)?);
            let settled = if value { step.nu > x } else { step.mu > x };
            if settled {
                return Ok(Some((round, value)));
            }
        }
        Ok(None)
    }
}

/// The μ/ν guesser for `spec`, with its listing.
pub fn synthesize_mu_nu(sig: Arc<Signature>, spec: &SynthesisSpec) -> Result<Arc<MuNuGuesser>> {
    if spec.pair.level < 2 {
        return Err(Error::Guessing(format!("Δ′ level {} is below 2", spec.pair.level)));
    }
    let listing = Listing::synthesis(sig, spec.pair.clone(), spec.enumeration.clone(), spec.fuel)?;
    Ok(Arc::new(MuNuGuesser {
        listing: Arc::new(listing),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borel::catalog::{exact_oracle, pair, CatalogSet};

    fn pt(pre: &[Nat], per: &[Nat]) -> Point {
        Point::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    fn guesser(d: DeltaPrimePair) -> Arc<MuNuGuesser> {
        synthesize_mu_nu(Arc::new(Signature::standard()), &SynthesisSpec::new(d)).unwrap()
    }

    #[test]
    fn whole_space_pins_mu() {
        let g = guesser(DeltaPrimePair::constant(true, 2));
        let t = g.trace(&pt(&[1, 2], &[3]), 200).unwrap();
        assert!(t.iter().all(|s| s.mu == 0));
        assert!(t.last().unwrap().guess);
        assert!(t.last().unwrap().nu > 5);
    }

    #[test]
    fn empty_set_pins_nu() {
        let g = guesser(DeltaPrimePair::constant(false, 2));
        let t = g.trace(&pt(&[], &[0]), 200).unwrap();
        assert!(t.iter().all(|s| s.nu == 0));
        assert!(!t.last().unwrap().guess);
    }

    #[test]
    fn exactly_one_zero_limits() {
        let set = CatalogSet::ExactlyZeros(1);
        let g = guesser(pair(&set).unwrap());
        for p in [pt(&[0], &[7]), pt(&[], &[0]), pt(&[3, 0, 1], &[2]), pt(&[], &[4])] {
            let (r, v) = g.tail_certificate(g.listing(), &p).unwrap().expect("certified");
            assert_eq!(v, exact_oracle(&set, &p), "{p}");
            let t = g.trace(&p, r + 300).unwrap();
            assert!(t[r..].iter().all(|s| s.guess == v));
        }
    }
}
