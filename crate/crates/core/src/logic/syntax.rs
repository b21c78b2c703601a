// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::fmt;

use crate::baire::Nat;

/// A term of the implemented fragment of L_max.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// The distinguished sequence symbol applied to a term.
    F(Box<Term>),
    /// A registered total function ℕᵏ → ℕ.
    Fun(String, Vec<Term>),
    /// A registered prefix functional `G∘f`; the last argument `m` selects
    /// the prefix `f(0), …, f(m)` and the others are ordinary parameters.
    PFun(String, Vec<Term>),
    Var(String),
    Const(Nat),
}

impl Term {
    pub fn f(t: Term) -> Term {
        Term::F(Box::new(t))
    }

    pub fn f_at(i: Nat) -> Term {
        Term::f(Term::Const(i))
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn mentions_f(&self) -> bool {
        match self {
            Term::F(_) | Term::PFun(..) => true,
            Term::Fun(_, args) => args.iter().any(Term::mentions_f),
            Term::Var(_) | Term::Const(_) => false,
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::F(t) => t.is_closed(),
            Term::Fun(_, args) | Term::PFun(_, args) => args.iter().all(Term::is_closed),
        }
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::F(t) => t.collect_vars(out),
            Term::Fun(_, args) | Term::PFun(_, args) => {
                args.iter().for_each(|a| a.collect_vars(out))
            }
        }
    }

    pub fn substitute(&self, var: &str, value: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => value.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::F(t) => Term::f(t.substitute(var, value)),
            Term::Fun(n, args) => Term::Fun(
                n.clone(),
                args.iter().map(|a| a.substitute(var, value)).collect(),
            ),
            Term::PFun(n, args) => Term::PFun(
                n.clone(),
                args.iter().map(|a| a.substitute(var, value)).collect(),
            ),
        }
    }

    pub(crate) fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::F(t) => t.collect_symbols(out),
            Term::Fun(n, args) | Term::PFun(n, args) => {
                out.insert(n.clone());
                args.iter().for_each(|a| a.collect_symbols(out));
            }
            Term::Var(_) | Term::Const(_) => {}
        }
    }
}

/// A first-order formula; a sentence when it has no free variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Eq(Term, Term),
    Pred(String, Vec<Term>),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    /// The atom `f(ī) = n̄`.
    pub fn f_equals(i: Nat, n: Nat) -> Formula {
        Formula::Eq(Term::f_at(i), Term::Const(n))
    }

    /// `f` extends the prefix `s`, as a conjunction of atoms.
    pub fn extends(s: &[Nat]) -> Formula {
        Formula::And(
            s.iter()
                .enumerate()
                .map(|(i, &v)| Formula::f_equals(i as Nat, v))
                .collect(),
        )
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(body))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Eq(..) | Formula::Pred(..) => true,
            Formula::Not(p) => p.is_quantifier_free(),
            Formula::And(ps) | Formula::Or(ps) => ps.iter().all(Formula::is_quantifier_free),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn mentions_f(&self) -> bool {
        match self {
            Formula::True | Formula::False => false,
            Formula::Eq(a, b) => a.mentions_f() || b.mentions_f(),
            Formula::Pred(_, args) => args.iter().any(Term::mentions_f),
            Formula::Not(p) | Formula::Exists(_, p) | Formula::Forall(_, p) => p.mentions_f(),
            Formula::And(ps) | Formula::Or(ps) => ps.iter().any(Formula::mentions_f),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut push_terms = |ts: &[&Term], bound: &Vec<String>| {
            let mut vs = BTreeSet::new();
            ts.iter().for_each(|t| t.collect_vars(&mut vs));
            out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Eq(a, b) => push_terms(&[a, b], bound),
            Formula::Pred(_, args) => push_terms(&args.iter().collect::<Vec<_>>(), bound),
            Formula::Not(p) => p.collect_free(bound, out),
            Formula::And(ps) | Formula::Or(ps) => {
                ps.iter().for_each(|p| p.collect_free(bound, out))
            }
            Formula::Exists(v, p) | Formula::Forall(v, p) => {
                bound.push(v.clone());
                p.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Replaces free occurrences of `var` by `value` (assumed closed).
    pub fn substitute(&self, var: &str, value: &Term) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Eq(a, b) => Formula::Eq(a.substitute(var, value), b.substitute(var, value)),
            Formula::Pred(n, args) => Formula::Pred(
                n.clone(),
                args.iter().map(|a| a.substitute(var, value)).collect(),
            ),
            Formula::Not(p) => Formula::Not(Box::new(p.substitute(var, value))),
            Formula::And(ps) => Formula::And(ps.iter().map(|p| p.substitute(var, value)).collect()),
            Formula::Or(ps) => Formula::Or(ps.iter().map(|p| p.substitute(var, value)).collect()),
            Formula::Exists(v, _) | Formula::Forall(v, _) if v == var => self.clone(),
            Formula::Exists(v, p) => Formula::Exists(v.clone(), Box::new(p.substitute(var, value))),
            Formula::Forall(v, p) => Formula::Forall(v.clone(), Box::new(p.substitute(var, value))),
        }
    }

    /// Renames free occurrences of `from` to the (fresh) variable `to`.
    pub(crate) fn rename(&self, from: &str, to: &str) -> Formula {
        self.substitute(from, &Term::Var(to.to_string()))
    }

    /// Registry symbols mentioned anywhere in the formula.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Eq(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            Formula::Pred(n, args) => {
                out.insert(n.clone());
                args.iter().for_each(|a| a.collect_symbols(out));
            }
            Formula::Not(p) | Formula::Exists(_, p) | Formula::Forall(_, p) => {
                p.collect_symbols(out)
            }
            Formula::And(ps) | Formula::Or(ps) => ps.iter().for_each(|p| p.collect_symbols(out)),
        }
    }

    /// Pushes negations down to atoms (quantifiers flip).
    pub fn nnf(&self) -> Formula {
        self.nnf_signed(true)
    }

    fn nnf_signed(&self, positive: bool) -> Formula {
        match (self, positive) {
            (Formula::True, true) | (Formula::False, false) => Formula::True,
            (Formula::True, false) | (Formula::False, true) => Formula::False,
            (Formula::Eq(..) | Formula::Pred(..), true) => self.clone(),
            (Formula::Eq(..) | Formula::Pred(..), false) => Formula::Not(Box::new(self.clone())),
            (Formula::Not(p), s) => p.nnf_signed(!s),
            (Formula::And(ps), true) | (Formula::Or(ps), false) => {
                Formula::And(ps.iter().map(|p| p.nnf_signed(positive)).collect())
            }
            (Formula::Or(ps), true) | (Formula::And(ps), false) => {
                Formula::Or(ps.iter().map(|p| p.nnf_signed(positive)).collect())
            }
            (Formula::Exists(v, p), true) | (Formula::Forall(v, p), false) => {
                Formula::Exists(v.clone(), Box::new(p.nnf_signed(positive)))
            }
            (Formula::Forall(v, p), true) | (Formula::Exists(v, p), false) => {
                Formula::Forall(v.clone(), Box::new(p.nnf_signed(positive)))
            }
        }
    }

    /// Number of quantifier nodes on the deepest branch.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Eq(..) | Formula::Pred(..) => 0,
            Formula::Not(p) => p.quantifier_depth(),
            Formula::And(ps) | Formula::Or(ps) => {
                ps.iter().map(Formula::quantifier_depth).max().unwrap_or(0)
            }
            Formula::Exists(_, p) | Formula::Forall(_, p) => 1 + p.quantifier_depth(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(n) => write!(f, "{n}"),
            Term::Var(v) => write!(f, "{v}"),
            Term::F(t) => write!(f, "(f {t})"),
            Term::Fun(n, args) => {
                write!(f, "(:fun {n}")?;
                args.iter().try_for_each(|a| write!(f, " {a}"))?;
                write!(f, ")")
            }
            Term::PFun(n, args) => {
                write!(f, "(:pfun {n}")?;
                args.iter().try_for_each(|a| write!(f, " {a}"))?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Pred(n, args) => {
                write!(f, "(:pred {n}")?;
                args.iter().try_for_each(|a| write!(f, " {a}"))?;
                write!(f, ")")
            }
            Formula::Not(p) => write!(f, "(not {p})"),
            Formula::And(ps) => {
                write!(f, "(and")?;
                ps.iter().try_for_each(|p| write!(f, " {p}"))?;
                write!(f, ")")
            }
            Formula::Or(ps) => {
                write!(f, "(or")?;
                ps.iter().try_for_each(|p| write!(f, " {p}"))?;
                write!(f, ")")
            }
            Formula::Exists(v, p) => write!(f, "(exists {v} {p})"),
            Formula::Forall(v, p) => write!(f, "(forall {v} {p})"),
        }
    }
}

/// A sentence as it appears in a fact listing: either plain, or a Δ
/// certificate pairing a Σ form with an asserted-equivalent Π form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sentence {
    Plain(Formula),
    Certified { sigma: Formula, pi: Formula },
}

impl Sentence {
    pub fn plain(f: Formula) -> Self {
        Sentence::Plain(f)
    }

    /// The form used for display and syntactic identity.
    pub fn primary(&self) -> &Formula {
        match self {
            Sentence::Plain(f) => f,
            Sentence::Certified { sigma, .. } => sigma,
        }
    }

    pub fn negate(&self) -> Sentence {
        match self {
            Sentence::Plain(f) => Sentence::Plain(negated(f)),
            Sentence::Certified { sigma, pi } => Sentence::Certified {
                sigma: negated(pi).nnf(),
                pi: negated(sigma).nnf(),
            },
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Sentence::Plain(f) => f.is_quantifier_free(),
            Sentence::Certified { sigma, pi } => {
                sigma.is_quantifier_free() && pi.is_quantifier_free()
            }
        }
    }
}

/// `¬φ`, collapsing a double negation.
pub fn negated(f: &Formula) -> Formula {
    match f {
        Formula::Not(inner) => (**inner).clone(),
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        other => other.clone().not(),
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sentence::Plain(p) => write!(f, "{p}"),
            Sentence::Certified { sigma, pi } => write!(f, "(delta {sigma} {pi})"),
        }
    }
}
