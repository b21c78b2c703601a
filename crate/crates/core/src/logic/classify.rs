// SPDX-License-Identifier: Apache-2.0

//! Prenex conversion and syntactic Σₙ/Πₙ classification.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::syntax::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    Sigma,
    Pi,
    /// A certified pair of Σ and Π forms.
    Delta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SentenceClass {
    pub shape: Shape,
    pub level: usize,
}

impl SentenceClass {
    pub const QUANTIFIER_FREE: SentenceClass = SentenceClass {
        shape: Shape::Sigma,
        level: 0,
    };

    pub fn sigma(level: usize) -> Self {
        SentenceClass {
            shape: Shape::Sigma,
            level,
        }
    }

    pub fn pi(level: usize) -> Self {
        SentenceClass {
            shape: Shape::Pi,
            level,
        }
    }

    pub fn delta(level: usize) -> Self {
        SentenceClass {
            shape: Shape::Delta,
            level,
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.level == 0
    }

    /// Least `n` with this class contained in Σₙ.
    pub fn sigma_level(&self) -> usize {
        match self.shape {
            Shape::Sigma | Shape::Delta => self.level,
            Shape::Pi if self.level == 0 => 0,
            Shape::Pi => self.level + 1,
        }
    }

    /// Least `n` with this class contained in Πₙ.
    pub fn pi_level(&self) -> usize {
        match self.shape {
            Shape::Pi | Shape::Delta => self.level,
            Shape::Sigma if self.level == 0 => 0,
            Shape::Sigma => self.level + 1,
        }
    }
}

impl fmt::Display for SentenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.shape {
            Shape::Sigma => "Sigma",
            Shape::Pi => "Pi",
            Shape::Delta => "Delta",
        };
        write!(f, "{s}{}", self.level)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// A prenex formula: quantifier prefix and quantifier-free matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prenex {
    pub prefix: Vec<(Quantifier, String)>,
    pub matrix: Formula,
}

impl Prenex {
    pub fn into_formula(self) -> Formula {
        self.prefix
            .into_iter()
            .rev()
            .fold(self.matrix, |body, (q, v)| match q {
                Quantifier::Exists => Formula::exists(&v, body),
                Quantifier::Forall => Formula::forall(&v, body),
            })
    }

    /// Number of maximal same-quantifier blocks.
    pub fn blocks(&self) -> usize {
        let mut count = 0;
        let mut last = None;
        for (q, _) in &self.prefix {
            if Some(*q) != last {
                count += 1;
                last = Some(*q);
            }
        }
        count
    }
}

struct Renamer {
    used: BTreeSet<String>,
}

impl Renamer {
    fn fresh(&mut self, base: &str) -> String {
        if self.used.insert(base.to_string()) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}_{i}"))
            .find(|n| self.used.insert(n.clone()))
            .expect("infinitely many candidates")
    }
}

/// Converts to prenex form by the standard equivalences, renaming bound
/// variables apart. Quantifier blocks from conjuncts/disjuncts are merged so
/// as to minimize alternations.
pub fn prenex(phi: &Formula) -> Prenex {
    let mut renamer = Renamer {
        used: phi.free_vars(),
    };
    to_prenex(&phi.nnf(), &mut renamer)
}

fn to_prenex(phi: &Formula, r: &mut Renamer) -> Prenex {
    match phi {
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let q = if matches!(phi, Formula::Exists(..)) {
                Quantifier::Exists
            } else {
                Quantifier::Forall
            };
            let name = r.fresh(v);
            let body = if &name != v {
                body.rename(v, &name)
            } else {
                (**body).clone()
            };
            let mut inner = to_prenex(&body, r);
            inner.prefix.insert(0, (q, name));
            inner
        }
        Formula::And(ps) | Formula::Or(ps) => {
            let parts: Vec<Prenex> = ps.iter().map(|p| to_prenex(p, r)).collect();
            let matrices = parts.iter().map(|p| p.matrix.clone()).collect();
            let matrix = if matches!(phi, Formula::And(_)) {
                Formula::And(matrices)
            } else {
                Formula::Or(matrices)
            };
            let prefixes: Vec<_> = parts.into_iter().map(|p| p.prefix).collect();
            Prenex {
                prefix: merge_prefixes(prefixes),
                matrix,
            }
        }
        // NNF: negation only sits on atoms here
        other => Prenex {
            prefix: Vec::new(),
            matrix: other.clone(),
        },
    }
}

fn merge_with_start(
    lists: &[Vec<(Quantifier, String)>],
    start: Quantifier,
) -> Vec<(Quantifier, String)> {
    let mut cursors = vec![0usize; lists.len()];
    let mut out = Vec::new();
    let mut q = start;
    while cursors.iter().zip(lists).any(|(&c, l)| c < l.len()) {
        for (c, l) in cursors.iter_mut().zip(lists) {
            while *c < l.len() && l[*c].0 == q {
                out.push(l[*c].clone());
                *c += 1;
            }
        }
        q = match q {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        };
    }
    out
}

fn merge_prefixes(lists: Vec<Vec<(Quantifier, String)>>) -> Vec<(Quantifier, String)> {
    let a = merge_with_start(&lists, Quantifier::Exists);
    let b = merge_with_start(&lists, Quantifier::Forall);
    let blocks = |p: &Vec<(Quantifier, String)>| {
        Prenex {
            prefix: p.clone(),
            matrix: Formula::True,
        }
        .blocks()
    };
    if blocks(&b) < blocks(&a) {
        b
    } else {
        a
    }
}

/// Syntactic class of the prenex form, counting alternating blocks.
/// Quantifier-free sentences are reported as Σ₀ (= Π₀).
pub fn classify(phi: &Formula) -> SentenceClass {
    let p = prenex(phi);
    match p.prefix.first() {
        None => SentenceClass::QUANTIFIER_FREE,
        Some((Quantifier::Exists, _)) => SentenceClass::sigma(p.blocks()),
        Some((Quantifier::Forall, _)) => SentenceClass::pi(p.blocks()),
    }
}

/// Class of a Δ certificate: the least `n` with `sigma` ∈ Σₙ and `pi` ∈ Πₙ.
/// The asserted equivalence of the two forms is taken on trust.
pub fn classify_certificate(sigma: &Formula, pi: &Formula) -> Result<SentenceClass> {
    let s = classify(sigma);
    let p = classify(pi);
    if matches!(s.shape, Shape::Pi) && s.level > 0 && p.level == 0 {
        return Err(Error::Shape(format!(
            "certificate Σ form is {s} while the Π form is quantifier-free"
        )));
    }
    Ok(SentenceClass::delta(s.sigma_level().max(p.pi_level())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::syntax::Term;

    fn atom(v: &str) -> Formula {
        Formula::eq(Term::f(Term::var(v)), Term::Const(0))
    }

    #[test]
    fn basic_classes() {
        assert_eq!(classify(&Formula::f_equals(0, 1)), SentenceClass::QUANTIFIER_FREE);
        assert_eq!(classify(&Formula::exists("x", atom("x"))), SentenceClass::sigma(1));
        let pi2 = Formula::forall("x", Formula::exists("y", Formula::eq(Term::f(Term::var("y")), Term::var("x"))));
        assert_eq!(classify(&pi2), SentenceClass::pi(2));
    }

    #[test]
    fn negation_and_blocks() {
        let phi = Formula::exists("x", Formula::exists("y", atom("x"))).not();
        assert_eq!(classify(&phi), SentenceClass::pi(1));
    }

    #[test]
    fn merging_minimizes_alternations() {
        // ∃x φ ∧ ∀y ψ ∧ ∃z χ  ⇒  ∃x∃z∀y (…) is Σ₂
        let phi = Formula::And(vec![
            Formula::exists("x", atom("x")),
            Formula::forall("y", atom("y")),
            Formula::exists("z", atom("z")),
        ]);
        assert_eq!(classify(&phi), SentenceClass::sigma(2));
    }

    #[test]
    fn clashing_binders_renamed() {
        let phi = Formula::And(vec![
            Formula::exists("x", atom("x")),
            Formula::forall("x", atom("x")),
        ]);
        let p = prenex(&phi);
        let names: BTreeSet<_> = p.prefix.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(names.len(), 2);
        assert!(p.into_formula().is_sentence());
    }

    #[test]
    fn certificates() {
        let sigma = Formula::exists("x", Formula::And(vec![
            Formula::eq(Term::var("x"), Term::Const(2)),
            atom("x"),
        ]));
        let pi = Formula::forall("x", Formula::Or(vec![
            Formula::eq(Term::var("x"), Term::Const(2)).not(),
            atom("x"),
        ]));
        assert_eq!(classify_certificate(&sigma, &pi).unwrap(), SentenceClass::delta(1));
    }
}
