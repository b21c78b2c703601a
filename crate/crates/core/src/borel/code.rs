// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::sync::Arc;

use crate::baire::{seq_of, skipping, unpair, Nat, Prefix};
use crate::guessing::{BitGuesser, Listing};
use crate::logic::{Formula, Sentence, Term};

/// A Borel set description in negation normal form.
#[derive(Clone, Debug, PartialEq)]
pub enum BorelCode {
    /// `[s]`, all extensions of `s`.
    Cylinder(Prefix),
    /// The complement of `[s]`.
    CoCylinder(Prefix),
    Union(Vec<BorelCode>),
    Intersection(Vec<BorelCode>),
    IndexedUnion(Family),
    IndexedIntersection(Family),
    /// `[φ]` for a sentence φ.
    Leaf(Sentence),
    /// `{f : G(f(φ₀), …, f(φ_j)) = bit}`.
    GuessEvent(GuessEvent),
}

impl BorelCode {
    pub fn whole() -> Self {
        BorelCode::Intersection(Vec::new())
    }

    pub fn empty() -> Self {
        BorelCode::Union(Vec::new())
    }

    pub fn cylinder(items: &[Nat]) -> Self {
        BorelCode::Cylinder(Prefix::from(items))
    }

    pub fn co_cylinder(items: &[Nat]) -> Self {
        BorelCode::CoCylinder(Prefix::from(items))
    }

    pub fn leaf(f: Formula) -> Self {
        BorelCode::Leaf(Sentence::Plain(f))
    }

    pub fn template(kind: Template) -> Family {
        Family::Template(kind)
    }

    /// The negation-normal dual.
    pub fn complement(&self) -> BorelCode {
        match self {
            BorelCode::Cylinder(s) => BorelCode::CoCylinder(s.clone()),
            BorelCode::CoCylinder(s) => BorelCode::Cylinder(s.clone()),
            BorelCode::Union(cs) => BorelCode::Intersection(cs.iter().map(Self::complement).collect()),
            BorelCode::Intersection(cs) => BorelCode::Union(cs.iter().map(Self::complement).collect()),
            BorelCode::IndexedUnion(f) => BorelCode::IndexedIntersection(f.complement()),
            BorelCode::IndexedIntersection(f) => BorelCode::IndexedUnion(f.complement()),
            BorelCode::Leaf(s) => BorelCode::Leaf(s.negate()),
            BorelCode::GuessEvent(e) => BorelCode::GuessEvent(GuessEvent {
                bit: !e.bit,
                ..e.clone()
            }),
        }
    }

    /// The family of an indexed node.
    pub fn family(&self) -> Option<&Family> {
        match self {
            BorelCode::IndexedUnion(f) | BorelCode::IndexedIntersection(f) => Some(f),
            _ => None,
        }
    }

    /// `child(i)` of an indexed node.
    pub fn child(&self, i: Nat) -> Option<BorelCode> {
        self.family().map(|f| f.child(i))
    }

    /// True for leaves that denote clopen sets.
    pub fn is_clopen_leaf(&self) -> bool {
        match self {
            BorelCode::Cylinder(_) | BorelCode::CoCylinder(_) => true,
            BorelCode::Leaf(s) => s.is_quantifier_free(),
            BorelCode::GuessEvent(e) => e.source.listing.is_quantifier_free(),
            BorelCode::Union(cs) | BorelCode::Intersection(cs) => cs.iter().all(Self::is_clopen_leaf),
            BorelCode::IndexedUnion(_) | BorelCode::IndexedIntersection(_) => false,
        }
    }

    /// Syntactic Borel class, judged from the first few children of each
    /// family.
    pub fn syntactic_class(&self) -> Option<CodeClass> {
        const SAMPLE: Nat = 6;
        if self.is_clopen_leaf() {
            return Some(CodeClass::Clopen);
        }
        match self {
            BorelCode::Leaf(s) => {
                let c = crate::logic::classify(s.primary());
                Some(match c.shape {
                    crate::logic::Shape::Pi => CodeClass::Pi(c.level),
                    _ => CodeClass::Sigma(c.level),
                })
            }
            BorelCode::IndexedUnion(f) | BorelCode::IndexedIntersection(f) => {
                let union = matches!(self, BorelCode::IndexedUnion(_));
                let mut n = 1;
                for i in 0..SAMPLE {
                    let c = f.child(i).syntactic_class()?;
                    n = n.max(if union { c.sigma_level() } else { c.pi_level() });
                }
                Some(if union { CodeClass::Sigma(n) } else { CodeClass::Pi(n) })
            }
            BorelCode::Union(cs) | BorelCode::Intersection(cs) => {
                let classes: Option<Vec<_>> = cs.iter().map(Self::syntactic_class).collect();
                let classes = classes?;
                let s = classes.iter().map(CodeClass::sigma_level).max().unwrap_or(0);
                let p = classes.iter().map(CodeClass::pi_level).max().unwrap_or(0);
                Some(if s <= p { CodeClass::Sigma(s) } else { CodeClass::Pi(p) })
            }
            _ => None,
        }
    }
}

/// Syntactic level of a code: clopen, Σ⁰ₙ or Π⁰ₙ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeClass {
    Clopen,
    Sigma(usize),
    Pi(usize),
}

impl CodeClass {
    pub fn sigma_level(&self) -> usize {
        match *self {
            CodeClass::Clopen => 0,
            CodeClass::Sigma(n) => n,
            CodeClass::Pi(n) => n + 1,
        }
    }

    pub fn pi_level(&self) -> usize {
        match *self {
            CodeClass::Clopen => 0,
            CodeClass::Pi(n) => n,
            CodeClass::Sigma(n) => n + 1,
        }
    }
}

/// The guesser and fact listing behind a [`GuessEvent`].
#[derive(Clone)]
pub struct GuessSource {
    pub guesser: Arc<dyn BitGuesser>,
    pub listing: Arc<Listing>,
}

impl GuessSource {
    pub fn new(guesser: Arc<dyn BitGuesser>, listing: Arc<Listing>) -> Self {
        GuessSource { guesser, listing }
    }

    pub(crate) fn key(&self) -> (usize, usize) {
        (
            Arc::as_ptr(&self.guesser) as *const () as usize,
            Arc::as_ptr(&self.listing) as usize,
        )
    }
}

impl PartialEq for GuessSource {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl fmt::Debug for GuessSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GuessSource({})", self.guesser.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GuessEvent {
    pub source: GuessSource,
    pub round: usize,
    pub bit: bool,
}

/// A total rule ℕ → code supplied programmatically.
#[derive(Clone)]
pub struct Rule {
    pub name: String,
    pub rule: Arc<dyn Fn(Nat) -> BorelCode + Send + Sync>,
}

impl PartialEq for Rule {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && Arc::ptr_eq(&self.rule, &other.rule)
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rule({})", self.name)
    }
}

/// An ℕ-indexed family of codes.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `items[0], items[1], …, tail, tail, …`
    Explicit { items: Vec<BorelCode>, tail: Box<BorelCode> },
    Template(Template),
    /// `child(i) = [body(var := ī)]`.
    Substitution { var: String, body: Formula },
    /// Children complemented.
    Complement(Box<Family>),
    /// `child(⟨j,k⟩) = outer.child(j).child(k)`; a leaf child `c` of the
    /// outer family behaves as the constant family `c`.
    Flatten(Box<Family>),
    /// `child(j) = GuessEvent(start + j, bit)`.
    GuessTail { source: GuessSource, start: usize, bit: bool },
    /// `child(i)` = the tail family from round `i + 1`, wrapped as an
    /// intersection (`rows_are_intersections`) or a union.
    GuessRows { source: GuessSource, bit: bool, rows_are_intersections: bool },
    /// `child(i)` = the constant intersection (or union) of `inner.child(i)`.
    Lift { inner: Box<Family>, rows_are_intersections: bool },
    /// `child(i)` = the Π form (`to_pi`) or Σ form of `inner.child(i)`.
    Normalize { inner: Box<Family>, to_pi: bool },
    /// Row `i` of `outer` with its two inner index levels merged into one.
    Collapse { outer: Box<Family>, to_pi: bool },
    Rule(Rule),
}

impl Family {
    /// The constant family.
    pub fn constant(c: BorelCode) -> Self {
        Family::Explicit {
            items: Vec::new(),
            tail: Box::new(c),
        }
    }

    pub fn rule(name: &str, rule: impl Fn(Nat) -> BorelCode + Send + Sync + 'static) -> Self {
        Family::Rule(Rule {
            name: name.to_string(),
            rule: Arc::new(rule),
        })
    }

    pub fn child(&self, i: Nat) -> BorelCode {
        match self {
            Family::Explicit { items, tail } => items
                .get(i as usize)
                .cloned()
                .unwrap_or_else(|| (**tail).clone()),
            Family::Template(t) => t.child(i),
            Family::Substitution { var, body } => {
                BorelCode::leaf(body.substitute(var, &Term::Const(i)))
            }
            Family::Complement(f) => f.child(i).complement(),
            Family::Flatten(outer) => {
                let (j, k) = unpair(i);
                let c = outer.child(j);
                match c.family() {
                    Some(inner) => inner.child(k),
                    None => c,
                }
            }
            Family::GuessTail { source, start, bit } => BorelCode::GuessEvent(GuessEvent {
                source: source.clone(),
                round: start + i as usize,
                bit: *bit,
            }),
            Family::GuessRows {
                source,
                bit,
                rows_are_intersections,
            } => {
                let tail = Family::GuessTail {
                    source: source.clone(),
                    start: i as usize + 1,
                    bit: *bit,
                };
                if *rows_are_intersections {
                    BorelCode::IndexedIntersection(tail)
                } else {
                    BorelCode::IndexedUnion(tail)
                }
            }
            Family::Lift {
                inner,
                rows_are_intersections,
            } => {
                let c = Family::constant(inner.child(i));
                if *rows_are_intersections {
                    BorelCode::IndexedIntersection(c)
                } else {
                    BorelCode::IndexedUnion(c)
                }
            }
            Family::Normalize { inner, to_pi } => {
                let c = inner.child(i);
                crate::borel::level_one_form(&c, *to_pi).unwrap_or(c)
            }
            Family::Collapse { outer, to_pi } => {
                let row = outer.child(i);
                match row.family() {
                    Some(g) => {
                        let flat = Family::Flatten(Box::new(Family::Normalize {
                            inner: Box::new(g.clone()),
                            to_pi: *to_pi,
                        }));
                        if *to_pi {
                            BorelCode::IndexedIntersection(flat)
                        } else {
                            BorelCode::IndexedUnion(flat)
                        }
                    }
                    None => row,
                }
            }
            Family::Rule(r) => (r.rule)(i),
        }
    }

    pub fn complement(&self) -> Family {
        match self {
            Family::Complement(inner) => (**inner).clone(),
            Family::Explicit { items, tail } => Family::Explicit {
                items: items.iter().map(BorelCode::complement).collect(),
                tail: Box::new(tail.complement()),
            },
            Family::Substitution { var, body } => Family::Substitution {
                var: var.clone(),
                body: crate::logic::negated(body),
            },
            Family::GuessTail { source, start, bit } => Family::GuessTail {
                source: source.clone(),
                start: *start,
                bit: !bit,
            },
            other => Family::Complement(Box::new(other.clone())),
        }
    }
}

/// Named, serializable family constructors with closed-form children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Template {
    /// `child(i) = [(i, i)]`.
    FirstRepeat,
    /// Co-cylinders whose intersection is `[s]`: every one-step deviation
    /// from `s`.
    AvoidCylinder(Prefix),
    /// `child(a) = ⋂ AvoidCylinder((a, a))`.
    RepeatRows,
    /// `child(0) = [#zeros(f(0..=n)) = k]`, `child(j) = [f(n+j) ≠ 0]`.
    ZerosExactRow { k: Nat, n: Nat },
    /// `child(n) = ⋂ ZerosExactRow(k, n)`.
    ZerosExactRows { k: Nat },
    /// `child(j) = [k ≤ #zeros(f(0..=j))]`.
    ZerosAtLeast { k: Nat },
    /// `child(0) = ⋃ ZerosAtLeast(k)`, `child(i) = [#zeros(f(0..i)) ≤ k]`.
    ZerosExactCover { k: Nat },
    /// `child(j) = [#zeros(f(0..=j)) ≤ k]`.
    ZerosAtMost { k: Nat },
    /// `child(i) = ⋃ const [#zeros(f(0..=i)) ≤ k]`.
    ZerosAtMostRows { k: Nat },
    /// `child(j) = [f(n+j) = 0]`.
    ZeroFrom { n: Nat },
    /// `child(n) = ⋂ ZeroFrom(n)`.
    ZeroFromRows,
    /// `child(n) = ⋃ ZeroFrom(n)`.
    ZeroAfterRows,
    /// `child(j) = [f(n+1+j) = f(n)]`.
    ConstFrom { n: Nat },
    /// `child(n) = ⋂ ConstFrom(n)`.
    ConstFromRows,
    /// Co-cylinders of every sequence of length > n ending in a nonzero
    /// entry (other indices repeat a fixed one).
    AvoidNonzeroAfter { n: Nat },
    /// `child(n) = ⋂ AvoidNonzeroAfter(n)`.
    AvoidNonzeroRows,
}

pub(crate) fn zeros_through(n: Nat) -> Term {
    Term::PFun("zeros".into(), vec![Term::Const(n)])
}

pub(crate) fn le(a: Term, b: Term) -> Formula {
    Formula::Pred("le".into(), vec![a, b])
}

impl Template {
    pub fn child(&self, i: Nat) -> BorelCode {
        use BorelCode::*;
        match self {
            Template::FirstRepeat => BorelCode::cylinder(&[i, i]),
            Template::AvoidCylinder(s) => {
                if s.is_empty() {
                    return BorelCode::whole();
                }
                let len = s.len() as Nat;
                let t = (i % len) as usize;
                let q = i / len;
                let mut dev = s.truncate_to(t);
                dev.push(skipping(s.items()[t], q));
                CoCylinder(dev)
            }
            Template::RepeatRows => {
                IndexedIntersection(Family::Template(Template::AvoidCylinder(Prefix::new(vec![i, i]))))
            }
            Template::ZerosExactRow { k, n } => {
                if i == 0 {
                    BorelCode::leaf(Formula::eq(zeros_through(*n), Term::Const(*k)))
                } else {
                    BorelCode::leaf(Formula::f_equals(n + i, 0).not())
                }
            }
            Template::ZerosExactRows { k } => {
                IndexedIntersection(Family::Template(Template::ZerosExactRow { k: *k, n: i }))
            }
            Template::ZerosAtLeast { k } => BorelCode::leaf(le(Term::Const(*k), zeros_through(i))),
            Template::ZerosExactCover { k } => {
                if i == 0 {
                    IndexedUnion(Family::Template(Template::ZerosAtLeast { k: *k }))
                } else {
                    IndexedUnion(Family::constant(BorelCode::leaf(le(
                        zeros_through(i - 1),
                        Term::Const(*k),
                    ))))
                }
            }
            Template::ZerosAtMost { k } => BorelCode::leaf(le(zeros_through(i), Term::Const(*k))),
            Template::ZerosAtMostRows { k } => IndexedUnion(Family::constant(BorelCode::leaf(le(
                zeros_through(i),
                Term::Const(*k),
            )))),
            Template::ZeroFrom { n } => BorelCode::leaf(Formula::f_equals(n + i, 0)),
            Template::ZeroFromRows => IndexedIntersection(Family::Template(Template::ZeroFrom { n: i })),
            Template::ZeroAfterRows => IndexedUnion(Family::Template(Template::ZeroFrom { n: i })),
            Template::ConstFrom { n } => {
                BorelCode::leaf(Formula::eq(Term::f_at(n + 1 + i), Term::f_at(*n)))
            }
            Template::ConstFromRows => IndexedIntersection(Family::Template(Template::ConstFrom { n: i })),
            Template::AvoidNonzeroAfter { n } => {
                let u = seq_of(i);
                let ok = u.len() as Nat > *n && u.items().last().is_some_and(|&v| v != 0);
                if ok {
                    CoCylinder(u)
                } else {
                    let mut fallback = vec![0; *n as usize];
                    fallback.push(1);
                    CoCylinder(Prefix::new(fallback))
                }
            }
            Template::AvoidNonzeroRows => {
                IndexedIntersection(Family::Template(Template::AvoidNonzeroAfter { n: i }))
            }
        }
    }

    /// DSL name and numeric parameters.
    pub fn name_and_params(&self) -> (&'static str, Vec<(&'static str, Nat)>) {
        match self {
            Template::FirstRepeat => ("first-repeat", vec![]),
            Template::AvoidCylinder(_) => ("avoid-cylinder", vec![]),
            Template::RepeatRows => ("repeat-rows", vec![]),
            Template::ZerosExactRow { k, n } => ("zeros-exact-row", vec![("k", *k), ("n", *n)]),
            Template::ZerosExactRows { k } => ("zeros-exact-rows", vec![("k", *k)]),
            Template::ZerosAtLeast { k } => ("zeros-at-least", vec![("k", *k)]),
            Template::ZerosExactCover { k } => ("zeros-exact-cover", vec![("k", *k)]),
            Template::ZerosAtMost { k } => ("zeros-at-most", vec![("k", *k)]),
            Template::ZerosAtMostRows { k } => ("zeros-at-most-rows", vec![("k", *k)]),
            Template::ZeroFrom { n } => ("zero-from", vec![("n", *n)]),
            Template::ZeroFromRows => ("zero-from-rows", vec![]),
            Template::ZeroAfterRows => ("zero-after-rows", vec![]),
            Template::ConstFrom { n } => ("const-from", vec![("n", *n)]),
            Template::ConstFromRows => ("const-from-rows", vec![]),
            Template::AvoidNonzeroAfter { n } => ("avoid-nonzero-after", vec![("n", *n)]),
            Template::AvoidNonzeroRows => ("avoid-nonzero-rows", vec![]),
        }
    }
}

trait Truncate {
    fn truncate_to(&self, n: usize) -> Prefix;
}

impl Truncate for Prefix {
    fn truncate_to(&self, n: usize) -> Prefix {
        self.truncated(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_an_involution_on_leaves() {
        let c = BorelCode::Union(vec![BorelCode::cylinder(&[1]), BorelCode::co_cylinder(&[2, 3])]);
        assert_eq!(c.complement().complement(), c);
        let fam = BorelCode::IndexedUnion(Family::Template(Template::FirstRepeat));
        assert_eq!(fam.complement().complement(), fam);
    }

    #[test]
    fn avoid_cylinder_children_deviate_once() {
        let t = Template::AvoidCylinder(Prefix::new(vec![2, 5]));
        assert_eq!(t.child(0), BorelCode::co_cylinder(&[0]));
        assert_eq!(t.child(1), BorelCode::co_cylinder(&[2, 0]));
        assert_eq!(t.child(4), BorelCode::co_cylinder(&[3]));
        assert_eq!(t.child(5), BorelCode::co_cylinder(&[2, 2]));
        assert_eq!(t.child(11), BorelCode::co_cylinder(&[2, 6]));
    }

    #[test]
    fn flatten_reads_pairs() {
        let outer = Family::rule("rows", |j| {
            BorelCode::IndexedUnion(Family::rule("row", move |k| BorelCode::cylinder(&[j, k])))
        });
        let flat = Family::Flatten(Box::new(outer));
        assert_eq!(flat.child(crate::baire::pair(3, 4)), BorelCode::cylinder(&[3, 4]));
    }

    #[test]
    fn syntactic_classes() {
        let open = BorelCode::IndexedUnion(Family::Template(Template::FirstRepeat));
        assert_eq!(open.syntactic_class(), Some(CodeClass::Sigma(1)));
        let sigma2 = BorelCode::IndexedUnion(Family::Template(Template::AvoidNonzeroRows));
        assert_eq!(sigma2.syntactic_class(), Some(CodeClass::Sigma(2)));
        assert_eq!(sigma2.complement().syntactic_class(), Some(CodeClass::Pi(2)));
    }
}
