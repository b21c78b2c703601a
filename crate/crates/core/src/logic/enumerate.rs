// SPDX-License-Identifier: Apache-2.0

//! Deterministic listings φ₀, φ₁, … of the sentences of a finite fragment.
//!
//! Order: by weight, then by generation order within a weight. Weights:
//! numeral `n` ↦ n+1, variable ↦ 1, `f(t)` and every registered
//! application ↦ 1 + argument weights, `¬φ` ↦ 1 + |φ|, binary `∧`/`∨`
//! ↦ 1 + |φ| + |ψ|, an equation ↦ sum of its sides, predicate atom ↦ 1 +
//! argument weights. Atoms that do not mention `f` cost 2 more (their
//! truth value is constant). Within a weight, terms are generated `f`,
//! functions, functionals, variables, numerals; equations split the weight
//! with the left side heaviest first; formulas go equations, predicates,
//! negations, conjunctions, disjunctions. Each weight class is finite, so
//! every sentence of the grammar gets exactly one index. The constant atoms
//! `true`/`false` and n-ary connectives are outside the grammar.

use super::classify::{SentenceClass, Shape};
use super::signature::Fragment;
use super::syntax::{Formula, Sentence, Term};
use crate::baire::Nat;

/// A listing handle: the fragment, the sentence class, and the certified
/// Δ pairs available for classes Δₘ with m ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enumeration {
    pub fragment: Fragment,
    pub class: SentenceClass,
    pub certified: Vec<Sentence>,
}

impl Enumeration {
    pub fn quantifier_free(fragment: Fragment) -> Self {
        Enumeration {
            fragment,
            class: SentenceClass::QUANTIFIER_FREE,
            certified: Vec::new(),
        }
    }

    pub fn atomic() -> Self {
        Enumeration::quantifier_free(Fragment::atomic())
    }

    pub fn stream(&self) -> Enumerator {
        Enumerator::new(self.clone())
    }
}

/// Incremental generator for an [`Enumeration`]; caches weight classes.
pub struct Enumerator {
    spec: Enumeration,
    vars: Vec<String>,
    terms: Vec<Vec<Term>>,
    formulas: Vec<Vec<Formula>>,
    /// Sentences in order, as generated so far.
    listed: Vec<Formula>,
    next_weight: usize,
}

impl Enumerator {
    pub fn new(spec: Enumeration) -> Self {
        let vars = match spec.class.shape {
            Shape::Delta => Vec::new(),
            _ => (1..=spec.class.level).map(|i| format!("x{i}")).collect(),
        };
        Enumerator {
            spec,
            vars,
            terms: vec![Vec::new()],
            formulas: vec![Vec::new()],
            listed: Vec::new(),
            next_weight: 1,
        }
    }

    fn terms_of(&mut self, w: usize) -> &[Term] {
        while self.terms.len() <= w {
            let k = self.terms.len();
            let mut out = Vec::new();
            if k >= 2 {
                for t in self.terms[k - 1].clone() {
                    out.push(Term::f(t));
                }
            }
            for (name, arity) in self.spec.fragment.functions.clone() {
                for args in self.tuples(arity, k.saturating_sub(1), k >= 1 + arity) {
                    out.push(Term::Fun(name.clone(), args));
                }
            }
            for (name, arity) in self.spec.fragment.functionals.clone() {
                for args in self.tuples(arity, k.saturating_sub(1), k >= 1 + arity) {
                    out.push(Term::PFun(name.clone(), args));
                }
            }
            if k == 1 {
                out.extend(self.vars.iter().map(|v| Term::Var(v.clone())));
            }
            if k >= 1 {
                out.push(Term::Const((k - 1) as Nat));
            }
            self.terms.push(out);
        }
        &self.terms[w]
    }

    /// All `arity`-tuples of terms with total weight `w`.
    fn tuples(&mut self, arity: usize, w: usize, feasible: bool) -> Vec<Vec<Term>> {
        if !feasible {
            return Vec::new();
        }
        if arity == 0 {
            return if w == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for first in (1..=w).rev() {
            let rest_w = w - first;
            if rest_w < arity - 1 {
                continue;
            }
            let heads = self.terms_of(first).to_vec();
            let tails = self.tuples(arity - 1, rest_w, true);
            for h in &heads {
                for t in &tails {
                    let mut v = vec![h.clone()];
                    v.extend(t.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }

    fn formulas_of(&mut self, w: usize) -> Vec<Formula> {
        while self.formulas.len() <= w {
            let k = self.formulas.len();
            let mut out = Vec::new();
            // equations
            for lhs_w in (1..k).rev() {
                let rhs_w = k - lhs_w;
                let lhs = self.terms_of(lhs_w).to_vec();
                let rhs = self.terms_of(rhs_w).to_vec();
                for a in &lhs {
                    for b in &rhs {
                        if a.mentions_f() || b.mentions_f() {
                            out.push(Formula::Eq(a.clone(), b.clone()));
                        }
                    }
                }
            }
            if k >= 2 {
                for lhs_w in (1..k - 2).rev() {
                    let rhs_w = k - 2 - lhs_w;
                    let lhs = self.terms_of(lhs_w).to_vec();
                    let rhs = self.terms_of(rhs_w).to_vec();
                    for a in &lhs {
                        for b in &rhs {
                            if !a.mentions_f() && !b.mentions_f() {
                                out.push(Formula::Eq(a.clone(), b.clone()));
                            }
                        }
                    }
                }
            }
            // predicate atoms
            for (name, arity) in self.spec.fragment.predicates.clone() {
                if arity == 0 {
                    continue;
                }
                for args in self.tuples(arity, k.saturating_sub(1), k > arity) {
                    if args.iter().any(Term::mentions_f) {
                        out.push(Formula::Pred(name.clone(), args));
                    }
                }
                if k >= 3 {
                    for args in self.tuples(arity, k - 3, k - 2 > arity) {
                        if !args.iter().any(Term::mentions_f) {
                            out.push(Formula::Pred(name.clone(), args));
                        }
                    }
                }
            }
            if k >= 2 {
                for p in self.formulas_of(k - 1) {
                    out.push(p.not());
                }
            }
            let mut binary = Vec::new();
            if k >= 3 {
                for lw in (1..k - 1).rev() {
                    let rw = k - 1 - lw;
                    let ls = self.formulas_of(lw);
                    let rs = self.formulas_of(rw);
                    for a in &ls {
                        for b in &rs {
                            binary.push((a.clone(), b.clone()));
                        }
                    }
                }
            }
            out.extend(binary.iter().map(|(a, b)| Formula::And(vec![a.clone(), b.clone()])));
            out.extend(binary.into_iter().map(|(a, b)| Formula::Or(vec![a, b])));
            self.formulas.push(out);
        }
        self.formulas[w].clone()
    }

    fn wrap(&self, matrix: Formula) -> Formula {
        let mut quant_exists = matches!(self.spec.class.shape, Shape::Sigma);
        let mut qs = Vec::new();
        for v in &self.vars {
            qs.push((quant_exists, v.clone()));
            quant_exists = !quant_exists;
        }
        qs.into_iter().rev().fold(matrix, |body, (e, v)| {
            if e {
                Formula::exists(&v, body)
            } else {
                Formula::forall(&v, body)
            }
        })
    }

    /// The number of plain sentences of weight ≤ `w`, counted without
    /// generating them.
    pub fn count_up_to_weight(&self, w: usize) -> u128 {
        let c = Counts::new(&self.spec.fragment, self.vars.len(), w);
        (1..=w).map(|k| c.formulas[k]).fold(0, u128::saturating_add)
    }

    /// Exact index of `f(ī) = n̄` among the plain sentences, counted.
    pub fn atom_index(&self, i: Nat, n: Nat) -> u128 {
        let (a_w, b_w) = (i as usize + 2, n as usize + 1);
        let k = a_w + b_w;
        let c = Counts::new(&self.spec.fragment, self.vars.len(), k);
        let mut idx: u128 = (1..k).map(|w| c.formulas[w]).fold(0, u128::saturating_add);
        // equations of weight k with a heavier left side come first
        for l in a_w + 1..k {
            idx = idx.saturating_add(c.eq_pairs(l, k - l));
        }
        // `f(ī)` wraps the last term of weight i+1; `n̄` is the last of weight n+1
        let pos_a = c.terms[a_w - 1] - 1;
        let pos_b = c.terms[b_w] - 1;
        idx.saturating_add(pos_a.saturating_mul(c.terms[b_w])).saturating_add(pos_b)
    }

    fn plain(&mut self, i: usize) -> Formula {
        while self.listed.len() <= i {
            let w = self.next_weight;
            self.next_weight += 1;
            let batch = self.formulas_of(w);
            for m in batch {
                let s = self.wrap(m);
                self.listed.push(s);
            }
        }
        self.listed[i].clone()
    }

    /// The `i`-th sentence of the listing.
    pub fn nth(&mut self, i: usize) -> Sentence {
        let c = if self.spec.class.shape == Shape::Delta && self.spec.class.level > 0 {
            2 * self.spec.certified.len()
        } else {
            0
        };
        if i % 2 == 1 && (i - 1) / 2 < c {
            let k = (i - 1) / 2;
            let s = &self.spec.certified[k / 2];
            return if k % 2 == 0 { s.clone() } else { s.negate() };
        }
        let q = i - c.min(i / 2);
        Sentence::Plain(self.plain(q))
    }
}

/// `φ_i` of the listing described by `(fragment, class)`.
pub fn enumerate(fragment: &Fragment, class: SentenceClass, i: usize) -> Sentence {
    Enumerator::new(Enumeration {
        fragment: fragment.clone(),
        class,
        certified: Vec::new(),
    })
    .nth(i)
}

/// Per-weight counts of terms, terms mentioning `f`, and formulas, for
/// the grammar `Enumerator` generates.
struct Counts {
    terms: Vec<u128>,
    terms_f: Vec<u128>,
    formulas: Vec<u128>,
}

impl Counts {
    fn new(fragment: &Fragment, vars: usize, max_w: usize) -> Self {
        let mut c = Counts {
            terms: vec![0; max_w + 1],
            terms_f: vec![0; max_w + 1],
            formulas: vec![0; max_w + 1],
        };
        for k in 1..=max_w {
            let (mut t, mut tf) = (0u128, 0u128);
            if k >= 2 {
                t = t.saturating_add(c.terms[k - 1]);
                tf = tf.saturating_add(c.terms[k - 1]);
            }
            for (_, a) in &fragment.functions {
                let (all, plain) = c.tuples(*a, k - 1);
                t = t.saturating_add(all);
                tf = tf.saturating_add(all - plain);
            }
            // a prefix functional reads f whatever its arguments
            for (_, a) in &fragment.functionals {
                let all = c.tuples(*a, k - 1).0;
                t = t.saturating_add(all);
                tf = tf.saturating_add(all);
            }
            if k == 1 {
                t = t.saturating_add(vars as u128);
            }
            t = t.saturating_add(1);
            c.terms[k] = t;
            c.terms_f[k] = tf;
        }
        for k in 1..=max_w {
            let mut n = 0u128;
            for l in 1..k {
                n = n.saturating_add(c.eq_pairs(l, k - l));
            }
            if k >= 2 {
                for l in 1..(k - 2).max(1) {
                    n = n.saturating_add(c.plain(l).saturating_mul(c.plain(k - 2 - l)));
                }
            }
            for (_, a) in &fragment.predicates {
                if *a == 0 {
                    continue;
                }
                let (all, plain) = c.tuples(*a, k - 1);
                n = n.saturating_add(all - plain);
                if k >= 3 {
                    n = n.saturating_add(c.tuples(*a, k - 3).1);
                }
            }
            if k >= 2 {
                n = n.saturating_add(c.formulas[k - 1]);
            }
            if k >= 3 {
                for lw in 1..k - 1 {
                    let pairs = c.formulas[lw].saturating_mul(c.formulas[k - 1 - lw]);
                    n = n.saturating_add(pairs.saturating_mul(2));
                }
            }
            c.formulas[k] = n;
        }
        c
    }

    fn plain(&self, w: usize) -> u128 {
        self.terms[w] - self.terms_f[w]
    }

    /// Equations `a = b` with `|a| = l`, `|b| = r` and `f` mentioned.
    fn eq_pairs(&self, l: usize, r: usize) -> u128 {
        self.terms[l]
            .saturating_mul(self.terms[r])
            .saturating_sub(self.plain(l).saturating_mul(self.plain(r)))
    }

    /// (all, f-free) `arity`-tuples of total weight `w`.
    fn tuples(&self, arity: usize, w: usize) -> (u128, u128) {
        if arity == 0 {
            return if w == 0 { (1, 1) } else { (0, 0) };
        }
        let (mut all, mut plain) = (0u128, 0u128);
        for first in 1..=w {
            let (ra, rp) = self.tuples(arity - 1, w - first);
            all = all.saturating_add(self.terms[first].saturating_mul(ra));
            plain = plain.saturating_add(self.plain(first).saturating_mul(rp));
        }
        (all, plain)
    }
}

/// Documented bound `E(i, n)`: in the atomic quantifier-free listing,
/// `f(ī) = n̄` has weight i+n+3 and so sits at an index below the number
/// of sentences of weight ≤ i+n+3.
pub fn atom_index_bound(i: Nat, n: Nat) -> u128 {
    Enumerator::new(Enumeration::atomic()).count_up_to_weight((i + n + 3) as usize) - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn first_atomic_sentence() {
        let s = enumerate(&Fragment::atomic(), SentenceClass::QUANTIFIER_FREE, 0);
        assert_eq!(s, Sentence::Plain(Formula::f_equals(0, 0)));
    }

    #[test]
    fn regenerating_gives_the_same_listing() {
        let mut a = Enumeration::atomic().stream();
        let mut b = Enumeration::atomic().stream();
        for i in (0..500).rev() {
            assert_eq!(a.nth(i), b.nth(i));
        }
    }

    #[test]
    fn atoms_appear_by_documented_bound() {
        let e = Enumeration::atomic().stream();
        for i in 0..=8 {
            for n in 0..=8 {
                assert!(e.atom_index(i, n) <= atom_index_bound(i, n), "f({i})={n}");
            }
        }
    }

    #[test]
    fn counted_atom_index_matches_listing() {
        let mut e = Enumeration::atomic().stream();
        let bound = atom_index_bound(2, 2) as usize;
        let seen: Vec<_> = (0..=bound).map(|k| e.nth(k)).collect();
        for i in 0..=2 {
            for n in 0..=2 {
                let target = Sentence::Plain(Formula::f_equals(i, n));
                let pos = seen.iter().position(|s| *s == target).expect("atom listed");
                assert_eq!(pos as u128, e.atom_index(i, n), "f({i})={n}");
            }
        }
    }

    #[test]
    fn counts_match_generated_classes() {
        let sig = crate::logic::Signature::standard();
        let frag = sig.fragment(["succ", "add", "le", "even", "zeros", "count"]).unwrap();
        for class in [SentenceClass::QUANTIFIER_FREE, SentenceClass::pi(2)] {
            let mut e = Enumerator::new(Enumeration {
                fragment: frag.clone(),
                class,
                certified: Vec::new(),
            });
            for w in 1..=6 {
                let generated: usize = (1..=w).map(|k| e.formulas_of(k).len()).sum();
                assert_eq!(e.count_up_to_weight(w), generated as u128, "weight {w}");
            }
        }
    }

    #[test]
    fn duplicate_free_prefix() {
        let mut e = Enumeration::atomic().stream();
        let set: HashSet<Sentence> = (0..10_000).map(|i| e.nth(i)).collect();
        assert_eq!(set.len(), 10_000);
    }

    #[test]
    fn quantified_classes_are_prenex_sentences() {
        let mut e = Enumerator::new(Enumeration {
            fragment: Fragment::atomic(),
            class: SentenceClass::pi(2),
            certified: Vec::new(),
        });
        for i in 0..200 {
            let s = e.nth(i);
            assert!(s.primary().is_sentence());
            assert_eq!(crate::logic::classify(s.primary()).level <= 2, true);
            assert!(matches!(s.primary(), Formula::Forall(..)));
        }
    }

    #[test]
    fn delta_listing_interleaves_certificates() {
        let cert = Sentence::Certified {
            sigma: Formula::exists("x", Formula::f_equals(0, 1)),
            pi: Formula::forall("x", Formula::f_equals(0, 1)),
        };
        let mut e = Enumerator::new(Enumeration {
            fragment: Fragment::atomic(),
            class: SentenceClass::delta(1),
            certified: vec![cert.clone()],
        });
        assert_eq!(e.nth(1), cert);
        assert_eq!(e.nth(3), cert.negate());
        assert_eq!(e.nth(0), Sentence::Plain(Formula::f_equals(0, 0)));
        let qf = enumerate(&Fragment::atomic(), SentenceClass::QUANTIFIER_FREE, 3);
        assert_eq!(e.nth(5), qf);
    }

    #[test]
    fn functionals_are_enumerated() {
        let sig = crate::logic::Signature::standard();
        let frag = sig.fragment(["zeros"]).unwrap();
        let mut e = Enumerator::new(Enumeration::quantifier_free(frag));
        let found = (0..2000).any(|i| e.nth(i).primary().symbols().contains("zeros"));
        assert!(found);
    }
}
