// SPDX-License-Identifier: Apache-2.0

//! Sound, partial membership of points in coded sets.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::code::{BorelCode, Family, GuessSource, Template};
use crate::baire::{Nat, Point};
use crate::error::{Error, Result};
use crate::guessing::BitSession;
use crate::logic::{evaluate, evaluate_sentence, Formula, Signature, Truth};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    In,
    Out,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::In
        } else {
            Verdict::Out
        }
    }

    pub fn decided(self) -> Option<bool> {
        match self {
            Verdict::In => Some(true),
            Verdict::Out => Some(false),
            Verdict::Unknown => None,
        }
    }

    pub fn dual(self) -> Self {
        match self {
            Verdict::In => Verdict::Out,
            Verdict::Out => Verdict::In,
            Verdict::Unknown => Verdict::Unknown,
        }
    }

    fn from_truth(t: Truth) -> Self {
        match t {
            Truth::True => Verdict::In,
            Truth::False => Verdict::Out,
            Truth::Unknown => Verdict::Unknown,
        }
    }

    fn and(self, o: Verdict) -> Verdict {
        match (self, o) {
            (Verdict::Out, _) | (_, Verdict::Out) => Verdict::Out,
            (Verdict::In, Verdict::In) => Verdict::In,
            _ => Verdict::Unknown,
        }
    }

    fn or(self, o: Verdict) -> Verdict {
        self.dual().and(o.dual()).dual()
    }
}

/// Membership of `p` in the set coded by `c`. Indexed unions search children
/// below `fuel` for an `In`, indexed intersections for an `Out`, after exact
/// family hooks have had their say.
pub fn member(sig: &Signature, c: &BorelCode, p: &Point, fuel: usize) -> Result<Verdict> {
    Ctx::new(sig, p, fuel).member(c)
}

/// Guess sequence of one (guesser, listing) source on the current point.
struct GuessRun {
    session: Box<dyn BitSession>,
    guesses: Vec<bool>,
    /// Round at which a fact bit came back undecided.
    stuck: bool,
    tail: Option<Option<(usize, bool)>>,
}

pub(crate) struct Ctx<'a> {
    sig: &'a Signature,
    p: &'a Point,
    fuel: usize,
    runs: RefCell<HashMap<(usize, usize), GuessRun>>,
}

impl<'a> Ctx<'a> {
    pub(crate) fn new(sig: &'a Signature, p: &'a Point, fuel: usize) -> Self {
        Ctx {
            sig,
            p,
            fuel,
            runs: RefCell::new(HashMap::new()),
        }
    }

    pub(crate) fn member(&self, c: &BorelCode) -> Result<Verdict> {
        Ok(match c {
            BorelCode::Cylinder(s) => Verdict::from_bool(self.p.extends(s)),
            BorelCode::CoCylinder(s) => Verdict::from_bool(!self.p.extends(s)),
            BorelCode::Union(cs) => {
                let mut v = Verdict::Out;
                for c in cs {
                    v = v.or(self.member(c)?);
                    if v == Verdict::In {
                        break;
                    }
                }
                v
            }
            BorelCode::Intersection(cs) => {
                let mut v = Verdict::In;
                for c in cs {
                    v = v.and(self.member(c)?);
                    if v == Verdict::Out {
                        break;
                    }
                }
                v
            }
            BorelCode::Leaf(s) => match evaluate_sentence(self.sig, s, self.p, self.fuel) {
                Ok(t) => Verdict::from_truth(t),
                Err(Error::Undecided(_)) => Verdict::Unknown,
                Err(e) => return Err(e),
            },
            BorelCode::GuessEvent(e) => match self.guess(&e.source, e.round)? {
                Some(g) => Verdict::from_bool(g == e.bit),
                None => Verdict::Unknown,
            },
            BorelCode::IndexedUnion(f) => match self.any(f)? {
                Some(b) => Verdict::from_bool(b),
                None => {
                    for i in 0..self.fuel as Nat {
                        if self.member(&f.child(i))? == Verdict::In {
                            return Ok(Verdict::In);
                        }
                    }
                    Verdict::Unknown
                }
            },
            BorelCode::IndexedIntersection(f) => match self.all(f)? {
                Some(b) => Verdict::from_bool(b),
                None => {
                    for i in 0..self.fuel as Nat {
                        if self.member(&f.child(i))? == Verdict::Out {
                            return Ok(Verdict::Out);
                        }
                    }
                    Verdict::Unknown
                }
            },
        })
    }

    /// Exact answer to "some child contains p", when one is available.
    fn any(&self, f: &Family) -> Result<Option<bool>> {
        Ok(match f {
            Family::Explicit { items, tail } => {
                let mut v = self.member(tail)?;
                for c in items {
                    v = v.or(self.member(c)?);
                }
                v.decided()
            }
            Family::Template(t) => template_any(t, self.p),
            Family::Substitution { var, body } => self.quantified(Formula::exists(var, body.clone()))?,
            Family::Complement(inner) => self.all(inner)?.map(|b| !b),
            Family::Flatten(outer) => match &**outer {
                Family::Normalize { inner, to_pi: false } => self.any(inner)?,
                _ => None,
            },
            Family::Normalize { inner, .. } | Family::Collapse { outer: inner, .. } => self.any(inner)?,
            Family::Lift { inner, .. } => self.any(inner)?,
            Family::GuessTail { source, start, bit } => {
                let Some((r, v)) = self.tail(source)? else { return Ok(None) };
                // rounds start.. up to the certified point, then the constant tail
                let mut hit = v == *bit;
                for round in *start..r.max(*start) {
                    match self.guess(source, round)? {
                        Some(g) => hit |= g == *bit,
                        None => return Ok(None),
                    }
                }
                Some(hit)
            }
            Family::GuessRows {
                source,
                bit,
                rows_are_intersections,
            } => {
                let Some((r, v)) = self.tail(source)? else { return Ok(None) };
                if *rows_are_intersections {
                    Some(v == *bit)
                } else {
                    let mut hit = v == *bit;
                    for round in 1..r.max(1) {
                        match self.guess(source, round)? {
                            Some(g) => hit |= g == *bit,
                            None => return Ok(None),
                        }
                    }
                    Some(hit)
                }
            }
            Family::Rule(_) => None,
        })
    }

    /// Exact answer to "every child contains p", when one is available.
    fn all(&self, f: &Family) -> Result<Option<bool>> {
        Ok(match f {
            Family::Explicit { items, tail } => {
                let mut v = self.member(tail)?;
                for c in items {
                    v = v.and(self.member(c)?);
                }
                v.decided()
            }
            Family::Template(t) => template_all(t, self.p),
            Family::Substitution { var, body } => self.quantified(Formula::forall(var, body.clone()))?,
            Family::Complement(inner) => self.any(inner)?.map(|b| !b),
            Family::Flatten(outer) => match &**outer {
                Family::Normalize { inner, to_pi: true } => self.all(inner)?,
                _ => None,
            },
            Family::Normalize { inner, .. } | Family::Collapse { outer: inner, .. } => self.all(inner)?,
            Family::Lift { inner, .. } => self.all(inner)?,
            Family::GuessTail { source, start, bit } => {
                let Some((r, v)) = self.tail(source)? else { return Ok(None) };
                let mut ok = v == *bit;
                for round in *start..r.max(*start) {
                    match self.guess(source, round)? {
                        Some(g) => ok &= g == *bit,
                        None => return Ok(None),
                    }
                }
                Some(ok)
            }
            Family::GuessRows {
                source,
                bit,
                rows_are_intersections,
            } => {
                let Some((r, v)) = self.tail(source)? else { return Ok(None) };
                if *rows_are_intersections {
                    let mut ok = v == *bit;
                    for round in 1..r.max(1) {
                        match self.guess(source, round)? {
                            Some(g) => ok &= g == *bit,
                            None => return Ok(None),
                        }
                    }
                    Some(ok)
                } else {
                    Some(v == *bit)
                }
            }
            Family::Rule(_) => None,
        })
    }

    fn quantified(&self, phi: Formula) -> Result<Option<bool>> {
        match evaluate(self.sig, &phi, self.p, self.fuel) {
            Ok(t) => Ok(t.decided()),
            Err(Error::Undecided(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn with_run<T>(&self, source: &GuessSource, f: impl FnOnce(&mut GuessRun) -> T) -> T {
        let mut runs = self.runs.borrow_mut();
        let run = runs.entry(source.key()).or_insert_with(|| GuessRun {
            session: source.guesser.session(),
            guesses: Vec::new(),
            stuck: false,
            tail: None,
        });
        f(run)
    }

    /// The guess after facts `0..=round`, `None` if a fact is undecided.
    pub(crate) fn guess(&self, source: &GuessSource, round: usize) -> Result<Option<bool>> {
        self.with_run(source, |run| {
            while run.guesses.len() <= round && !run.stuck {
                let i = run.guesses.len();
                match source.listing.bit(i, self.p) {
                    Ok(b) => run.guesses.push(run.session.push(b)),
                    Err(Error::Undecided(_)) => run.stuck = true,
                    Err(e) => return Err(e),
                }
            }
            Ok(run.guesses.get(round).copied())
        })
    }

    fn tail(&self, source: &GuessSource) -> Result<Option<(usize, bool)>> {
        if let Some(t) = self.with_run(source, |run| run.tail) {
            return Ok(t);
        }
        let t = match source.guesser.tail_certificate(&source.listing, self.p) {
            Ok(t) => t,
            Err(Error::Undecided(_)) => None,
            Err(e) => return Err(e),
        };
        self.with_run(source, |run| run.tail = Some(t));
        Ok(t)
    }
}

fn zeros_through(p: &Point, n: Nat) -> Nat {
    p.count_below(0, n as usize + 1) as Nat
}

/// Some index `t > n` with `pred(f(t))`.
fn exists_after(p: &Point, n: Nat, pred: impl Fn(Nat) -> bool) -> bool {
    let start = n as usize + 1;
    let end = start.max(p.preamble().len()) + p.period().len();
    (start..end).any(|t| pred(p.at(t)))
}

fn template_any(t: &Template, p: &Point) -> Option<bool> {
    Some(match t {
        Template::FirstRepeat => return None,
        Template::AvoidCylinder(_) => true,
        Template::RepeatRows => p.at(0) == p.at(1),
        Template::ZerosExactRow { k, n } => zeros_through(p, *n) == *k || exists_after(p, *n, |v| v != 0),
        Template::ZerosExactRows { k } => p.count_of(0) == Some(*k as usize),
        Template::ZerosAtLeast { k } => p.count_of(0).is_none_or(|c| c as Nat >= *k),
        Template::ZerosExactCover { k } => p.count_of(0).is_none_or(|c| c as Nat >= *k) || zeros_through(p, 0) <= *k,
        Template::ZerosAtMost { k } | Template::ZerosAtMostRows { k } => zeros_through(p, 0) <= *k,
        Template::ZeroFrom { n } => p.at(*n as usize) == 0 || exists_after(p, *n, |v| v == 0),
        Template::ZeroFromRows => p.period().iter().all(|&v| v == 0),
        Template::ZeroAfterRows => p.period().contains(&0) || p.preamble().contains(&0),
        Template::ConstFrom { n } => {
            let c = p.at(*n as usize);
            exists_after(p, *n, |v| v == c)
        }
        Template::ConstFromRows => p.period().len() == 1,
        Template::AvoidNonzeroAfter { .. } => true,
        Template::AvoidNonzeroRows => p.period().iter().all(|&v| v == 0),
    })
}

fn template_all(t: &Template, p: &Point) -> Option<bool> {
    Some(match t {
        Template::FirstRepeat => return None,
        Template::AvoidCylinder(s) => p.extends(s),
        Template::RepeatRows => false,
        Template::ZerosExactRow { k, n } => zeros_through(p, *n) == *k && !exists_after(p, *n, |v| v == 0),
        Template::ZerosExactRows { k } => zeros_through(p, 0) == *k && !exists_after(p, 0, |v| v == 0),
        Template::ZerosAtLeast { k } => zeros_through(p, 0) >= *k,
        Template::ZerosExactCover { k } => p.count_of(0) == Some(*k as usize),
        Template::ZerosAtMost { k } | Template::ZerosAtMostRows { k } => {
            p.count_of(0).is_some_and(|c| c as Nat <= *k)
        }
        Template::ZeroFrom { n } => p.at(*n as usize) == 0 && !exists_after(p, *n, |v| v != 0),
        Template::ZeroFromRows | Template::AvoidNonzeroRows => {
            p.preamble().iter().chain(p.period()).all(|&v| v == 0)
        }
        Template::ZeroAfterRows => p.period().contains(&0),
        Template::ConstFrom { n } => {
            let c = p.at(*n as usize);
            !exists_after(p, *n, |v| v != c)
        }
        Template::ConstFromRows => p.preamble().is_empty() && p.period().len() == 1,
        Template::AvoidNonzeroAfter { n } => p.at(*n as usize) == 0 && !exists_after(p, *n, |v| v != 0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(pre: &[Nat], per: &[Nat]) -> Point {
        Point::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    #[test]
    fn cylinders_decide() {
        let sig = Signature::empty();
        let c = BorelCode::cylinder(&[3]);
        assert_eq!(member(&sig, &c, &pt(&[3], &[0]), 0).unwrap(), Verdict::In);
    }

    #[test]
    fn first_repeat_union_is_only_semidecided() {
        let sig = Signature::empty();
        let u = BorelCode::IndexedUnion(Family::Template(Template::FirstRepeat));
        assert_eq!(member(&sig, &u, &pt(&[], &[4]), 10).unwrap(), Verdict::In);
        let off = pt(&[1, 2], &[3]);
        for fuel in [0, 10, 1000] {
            assert_eq!(member(&sig, &u, &off, fuel).unwrap(), Verdict::Unknown);
        }
        assert_eq!(member(&sig, &u.complement(), &off, 1000).unwrap(), Verdict::Unknown);
        assert_eq!(member(&sig, &u.complement(), &pt(&[], &[4]), 10).unwrap(), Verdict::Out);
    }

    #[test]
    fn substitution_hooks_use_the_periodic_fragment() {
        let sig = Signature::empty();
        let body = Formula::eq(crate::logic::Term::f(crate::logic::Term::var("x")), crate::logic::Term::Const(9)).not();
        let c = BorelCode::IndexedIntersection(Family::Substitution {
            var: "x".into(),
            body,
        });
        assert_eq!(member(&sig, &c, &pt(&[], &[0]), 0).unwrap(), Verdict::In);
    }
}
