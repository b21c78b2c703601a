// SPDX-License-Identifier: Apache-2.0

//! Fact listings φ₀, φ₁, … and the fact streams they induce on a point.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::baire::{unpair, Nat, Point, Prefix};
use crate::borel::{certificate, DeltaPrimePair};
use crate::error::{Error, Result};
use crate::logic::{
    determined_by, sentence_bit, Enumeration, Enumerator, Formula, Sentence, Signature, Term,
};

/// What a certificate sentence tells the μ/ν guesser when it appears.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// `¬σ_xy` appeared: row `x` of the `⋃⋂` form has failed.
    KillMu(Nat),
    /// `τ_xy` appeared: row `x` of the `⋂⋃` form has succeeded.
    KillNu(Nat),
}

enum Kind {
    /// The canonical enumeration as is.
    Canonical,
    /// Only the atoms `f(ī) = n̄`, `(i, n)` in block `i + 2ⁿ − 1`, then by `n`.
    Atoms,
    /// Certificates of a Δ′ pair at even positions, the canonical
    /// enumeration at odd ones, duplicates dropped.
    Synthesis(Box<DeltaPrimePair>),
}

struct State {
    items: Vec<Sentence>,
    seen: HashMap<Sentence, usize>,
    events: Vec<Vec<(Role, usize)>>,
    pending: Vec<(Role, usize)>,
    candidates: u64,
    canon: Enumerator,
    canon_next: usize,
    atoms: Vec<(Nat, Nat)>,
    atom_block: Nat,
}

/// A deterministic listing of sentences, extended lazily and shared
/// between guessers, codes and games.
pub struct Listing {
    sig: Arc<Signature>,
    kind: Kind,
    enumeration: Enumeration,
    fuel: usize,
    state: Mutex<State>,
}

impl std::fmt::Debug for Listing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Listing")
            .field("kind", &self.kind_name())
            .field("class", &self.enumeration.class)
            .finish()
    }
}

impl Listing {
    fn with_kind(sig: Arc<Signature>, kind: Kind, enumeration: Enumeration, fuel: usize) -> Self {
        Listing {
            sig,
            kind,
            fuel,
            state: Mutex::new(State {
                items: Vec::new(),
                seen: HashMap::new(),
                events: Vec::new(),
                pending: Vec::new(),
                candidates: 0,
                canon: enumeration.stream(),
                canon_next: 0,
                atoms: Vec::new(),
                atom_block: 0,
            }),
            enumeration,
        }
    }

    /// The enumeration `φ₀, φ₁, …` of `enumeration`.
    pub fn canonical(sig: Arc<Signature>, enumeration: Enumeration, fuel: usize) -> Self {
        Listing::with_kind(sig, Kind::Canonical, enumeration, fuel)
    }

    /// All atoms `f(ī) = n̄` and nothing else.
    pub fn atoms(sig: Arc<Signature>) -> Self {
        Listing::with_kind(sig, Kind::Atoms, Enumeration::atomic(), 0)
    }

    /// Certificates `σ_xy, ¬σ_xy, τ_xy, ¬τ_xy` for pairs `(x, y)` in Cantor
    /// order, interleaved with `enumeration`.
    pub fn synthesis(
        sig: Arc<Signature>,
        pair: DeltaPrimePair,
        enumeration: Enumeration,
        fuel: usize,
    ) -> Result<Self> {
        for z in 0..64 {
            let (x, y) = unpair(z);
            certificate(&pair.d(x, y))?;
            certificate(&pair.e(x, y))?;
        }
        Ok(Listing::with_kind(sig, Kind::Synthesis(Box::new(pair)), enumeration, fuel))
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Kind::Canonical => "canonical",
            Kind::Atoms => "atoms",
            Kind::Synthesis(_) => "synthesis",
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn enumeration(&self) -> &Enumeration {
        &self.enumeration
    }

    pub fn pair(&self) -> Option<&DeltaPrimePair> {
        match &self.kind {
            Kind::Synthesis(d) => Some(d),
            _ => None,
        }
    }

    pub fn fuel(&self) -> usize {
        self.fuel
    }

    pub fn is_quantifier_free(&self) -> bool {
        match &self.kind {
            Kind::Atoms => true,
            Kind::Canonical => self.enumeration.class.is_quantifier_free(),
            Kind::Synthesis(d) => d.level == 2 && self.enumeration.class.is_quantifier_free(),
        }
    }

    fn atom_at(st: &mut State, i: usize) -> (Nat, Nat) {
        while st.atoms.len() <= i {
            let b = st.atom_block;
            let mut n = 0u32;
            while n < 63 && (1u64 << n) - 1 <= b {
                st.atoms.push((b - ((1u64 << n) - 1), n as Nat));
                n += 1;
            }
            st.atom_block += 1;
        }
        st.atoms[i]
    }

    fn ensure(&self, st: &mut State, i: usize) {
        while st.items.len() <= i {
            match &self.kind {
                Kind::Atoms => {
                    let (k, v) = Self::atom_at(st, st.items.len());
                    st.items.push(Sentence::Plain(Formula::f_equals(k, v)));
                }
                Kind::Canonical => {
                    let s = st.canon.nth(st.canon_next);
                    st.canon_next += 1;
                    st.items.push(s);
                }
                Kind::Synthesis(d) => {
                    let c = st.candidates;
                    st.candidates += 1;
                    let (s, role) = if c % 2 == 0 {
                        let k = c / 2;
                        let (x, y) = unpair(k / 4);
                        let cert = |code| certificate(&code).expect("certificates validated on construction");
                        match k % 4 {
                            0 => (cert(d.d(x, y)), None),
                            1 => (cert(d.d(x, y)).negate(), Some(Role::KillMu(x))),
                            2 => (cert(d.e(x, y)), Some(Role::KillNu(x))),
                            _ => (cert(d.e(x, y)).negate(), None),
                        }
                    } else {
                        let s = st.canon.nth(st.canon_next);
                        st.canon_next += 1;
                        (s, None)
                    };
                    let idx = match st.seen.get(&s) {
                        Some(&idx) => idx,
                        None => {
                            let idx = st.items.len();
                            st.seen.insert(s.clone(), idx);
                            st.items.push(s);
                            idx
                        }
                    };
                    if let Some(r) = role {
                        st.pending.push((r, idx));
                    }
                }
            }
            while st.events.len() < st.items.len() {
                let ev = std::mem::take(&mut st.pending);
                st.events.push(ev);
            }
        }
    }

    /// φᵢ.
    pub fn sentence(&self, i: usize) -> Sentence {
        let mut st = self.state.lock().expect("listing lock");
        self.ensure(&mut st, i);
        st.items[i].clone()
    }

    /// Role events registered while producing φᵢ; each names an index ≤ i.
    pub fn events(&self, i: usize) -> Vec<(Role, usize)> {
        let mut st = self.state.lock().expect("listing lock");
        self.ensure(&mut st, i);
        st.events[i].clone()
    }

    /// `(k, n)` when φᵢ is the atom `f(k̄) = n̄`.
    pub fn atom(&self, i: usize) -> Option<(Nat, Nat)> {
        if let Kind::Atoms = self.kind {
            let mut st = self.state.lock().expect("listing lock");
            return Some(Self::atom_at(&mut st, i));
        }
        match self.sentence(i) {
            Sentence::Plain(Formula::Eq(Term::F(idx), Term::Const(v))) => match *idx {
                Term::Const(k) => Some((k, v)),
                _ => None,
            },
            _ => None,
        }
    }

    /// f(φᵢ) on `p`.
    pub fn bit(&self, i: usize, p: &Point) -> Result<bool> {
        self.bit_with_fuel(i, p, self.fuel)
    }

    /// f(φᵢ) on `p`, searching with `fuel` instead of the listing's own.
    pub fn bit_with_fuel(&self, i: usize, p: &Point, fuel: usize) -> Result<bool> {
        if let Kind::Atoms = self.kind {
            let (k, v) = self.atom(i).expect("atoms listing");
            return Ok(p.at(k as usize) == v);
        }
        let s = self.sentence(i);
        sentence_bit(&self.sig, &s, p, fuel)
    }

    /// The value of φᵢ when the prefix `s` determines it.
    pub fn determined(&self, i: usize, s: &Prefix) -> Result<Option<bool>> {
        if let Kind::Atoms = self.kind {
            let (k, v) = self.atom(i).expect("atoms listing");
            return Ok(s.get(k as usize).map(|x| x == v));
        }
        match self.sentence(i) {
            Sentence::Plain(f) if f.is_quantifier_free() => determined_by(&self.sig, &f, s),
            _ => Ok(None),
        }
    }

    /// Fact bits `0..n` on `p`.
    pub fn bits(&self, p: &Point, n: usize) -> Result<Vec<bool>> {
        (0..n).map(|i| self.bit(i, p)).collect()
    }
}

/// A fact stream: the bits of a listing on a point, one at a time.
pub struct FactStream<'a> {
    listing: &'a Listing,
    point: &'a Point,
    next: usize,
}

impl<'a> FactStream<'a> {
    pub fn new(listing: &'a Listing, point: &'a Point) -> Self {
        FactStream {
            listing,
            point,
            next: 0,
        }
    }
}

impl Iterator for FactStream<'_> {
    type Item = Result<bool>;

    fn next(&mut self) -> Option<Result<bool>> {
        let b = self.listing.bit(self.next, self.point);
        self.next += 1;
        Some(b)
    }
}

pub(crate) fn undecided(e: &Error) -> bool {
    matches!(e, Error::Undecided(_))
}
