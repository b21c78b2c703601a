// SPDX-License-Identifier: Apache-2.0

//! Clopen codes for quantifier-free sentences.

use std::collections::{BTreeMap, BTreeSet};

use super::eval::evaluate;
use super::signature::Signature;
use super::syntax::{Formula, Term};
use crate::baire::{Nat, Point, Prefix};
use crate::borel::BorelCode;
use crate::error::{Error, Result};

/// Past this many disjuncts the sentence is kept as a single leaf.
const MAX_DISJUNCTS: usize = 64;

/// A code for `[φ]`: a union over a disjunctive case split, each case an
/// intersection of a cylinder on its pinned initial segment, co-cylinders for
/// exclusions right after it, and sentence leaves for the rest.
pub fn clopen_set(sig: &Signature, phi: &Formula) -> Result<BorelCode> {
    if !phi.is_quantifier_free() {
        return Err(Error::NotQuantifierFree);
    }
    if let Some(v) = phi.free_vars().into_iter().next() {
        return Err(Error::FreeVariable(v));
    }
    if let Some(constant) = atomic_constant(phi) {
        return Ok(if constant {
            BorelCode::whole()
        } else {
            BorelCode::empty()
        });
    }
    let Some(cases) = dnf(&phi.nnf()) else {
        return Ok(BorelCode::leaf(phi.clone()));
    };
    let probe = Point::constant(0);
    let mut out = Vec::new();
    for case in cases {
        match conjunct_code(sig, &case, &probe)? {
            Case::Never => {}
            Case::Always => return Ok(BorelCode::whole()),
            Case::Code(c) => out.push(c),
        }
    }
    Ok(match out.len() {
        1 => out.pop().expect("one case"),
        _ => BorelCode::Union(out),
    })
}

/// Literals of a DNF case.
type Conj = Vec<Formula>;

fn dnf(phi: &Formula) -> Option<Vec<Conj>> {
    Some(match phi {
        Formula::True => vec![Vec::new()],
        Formula::False => Vec::new(),
        Formula::Or(ps) => {
            let mut out = Vec::new();
            for p in ps {
                out.extend(dnf(p)?);
                if out.len() > MAX_DISJUNCTS {
                    return None;
                }
            }
            out
        }
        Formula::And(ps) => {
            let mut acc: Vec<Conj> = vec![Vec::new()];
            for p in ps {
                let d = dnf(p)?;
                let mut next = Vec::new();
                for a in &acc {
                    for b in &d {
                        let mut c = a.clone();
                        c.extend(b.iter().cloned());
                        next.push(c);
                    }
                }
                if next.len() > MAX_DISJUNCTS {
                    return None;
                }
                acc = next;
            }
            acc
        }
        lit => vec![vec![lit.clone()]],
    })
}

/// `(k, v)` for the literal `f(k̄) = v̄` in either orientation.
fn pin(lit: &Formula) -> Option<(Nat, Nat)> {
    let Formula::Eq(a, b) = lit else { return None };
    match (a, b) {
        (Term::F(i), Term::Const(v)) | (Term::Const(v), Term::F(i)) => match **i {
            Term::Const(k) => Some((k, *v)),
            _ => None,
        },
        _ => None,
    }
}

enum Case {
    Never,
    Always,
    Code(BorelCode),
}

fn conjunct_code(sig: &Signature, lits: &[Formula], probe: &Point) -> Result<Case> {
    let mut pinned: BTreeMap<Nat, Nat> = BTreeMap::new();
    let mut excluded: BTreeSet<(Nat, Nat)> = BTreeSet::new();
    let mut rest = Vec::new();
    for lit in lits {
        let f_free = match lit {
            Formula::Not(inner) => !inner.mentions_f(),
            other => !other.mentions_f(),
        };
        if f_free {
            // constant truth value, any point will do
            match evaluate(sig, lit, probe, 0)?.decided() {
                Some(true) => continue,
                Some(false) => return Ok(Case::Never),
                None => {
                    rest.push(lit.clone());
                    continue;
                }
            }
        }
        if let Some((k, v)) = pin(lit) {
            if pinned.insert(k, v).is_some_and(|old| old != v) {
                return Ok(Case::Never);
            }
        } else if let Some((k, v)) = match lit {
            Formula::Not(inner) => pin(inner),
            _ => None,
        } {
            excluded.insert((k, v));
        } else {
            rest.push(lit.clone());
        }
    }
    let mut parts = Vec::new();
    let mut run = Vec::new();
    while let Some(&v) = pinned.get(&(run.len() as Nat)) {
        run.push(v);
    }
    for (&k, &v) in &pinned {
        if k as usize >= run.len() {
            parts.push(BorelCode::leaf(Formula::f_equals(k, v)));
        }
    }
    for &(k, v) in &excluded {
        match pinned.get(&k) {
            Some(&w) if w == v => return Ok(Case::Never),
            Some(_) => {}
            None if k as usize == run.len() => {
                let mut s = Prefix::new(run.clone());
                s.push(v);
                parts.push(BorelCode::CoCylinder(s));
            }
            None => parts.push(BorelCode::leaf(Formula::f_equals(k, v).not())),
        }
    }
    if !run.is_empty() {
        parts.insert(0, BorelCode::Cylinder(Prefix::new(run)));
    }
    parts.extend(rest.into_iter().map(BorelCode::leaf));
    Ok(match parts.len() {
        0 => Case::Always,
        1 => Case::Code(parts.pop().expect("one part")),
        _ => Case::Code(BorelCode::Intersection(parts)),
    })
}

/// Exhaustive truth table for sentences built from `f(k̄) = v̄` atoms only:
/// `Some(b)` when the sentence is constantly `b`.
fn atomic_constant(phi: &Formula) -> Option<bool> {
    let mut atoms = BTreeSet::new();
    if !collect_atoms(phi, &mut atoms) {
        return None;
    }
    let indices: Vec<Nat> = atoms.iter().map(|&(k, _)| k).collect::<BTreeSet<_>>().into_iter().collect();
    if indices.len() > 6 {
        return None;
    }
    // per index: the mentioned values plus one unmentioned value
    let choices: Vec<Vec<Nat>> = indices
        .iter()
        .map(|&k| {
            let mut vs: Vec<Nat> = atoms.iter().filter(|a| a.0 == k).map(|a| a.1).collect();
            vs.push(vs.iter().max().map_or(0, |m| m + 1));
            vs
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut idx = vec![0usize; indices.len()];
    loop {
        let assign: BTreeMap<Nat, Nat> = indices
            .iter()
            .zip(&idx)
            .zip(&choices)
            .map(|((&k, &i), c)| (k, c[i]))
            .collect();
        seen.insert(truth_under(phi, &assign));
        if seen.len() > 1 {
            return None;
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return seen.into_iter().next();
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn collect_atoms(phi: &Formula, out: &mut BTreeSet<(Nat, Nat)>) -> bool {
    match phi {
        Formula::True | Formula::False => true,
        Formula::Not(p) => collect_atoms(p, out),
        Formula::And(ps) | Formula::Or(ps) => ps.iter().all(|p| collect_atoms(p, out)),
        lit => match pin(lit) {
            Some(a) => {
                out.insert(a);
                true
            }
            None => false,
        },
    }
}

fn truth_under(phi: &Formula, assign: &BTreeMap<Nat, Nat>) -> bool {
    match phi {
        Formula::True => true,
        Formula::False => false,
        Formula::Not(p) => !truth_under(p, assign),
        Formula::And(ps) => ps.iter().all(|p| truth_under(p, assign)),
        Formula::Or(ps) => ps.iter().any(|p| truth_under(p, assign)),
        lit => {
            let (k, v) = pin(lit).expect("atomic fragment");
            assign[&k] == v
        }
    }
}
