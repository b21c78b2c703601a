// SPDX-License-Identifier: Apache-2.0

//! Δ′ pairs and the level transformers between them and Σ/Π normal forms.

use super::code::{BorelCode, CodeClass, Family};
use crate::baire::Nat;
use crate::error::{Error, Result};
use crate::logic::{prenex, Formula, Quantifier, Sentence};

/// How many children are inspected when validating a normal form.
const CHECK_CHILDREN: Nat = 8;

/// A set given twice: as `⋃ᵢ⋂ⱼ Dᵢⱼ` and as `⋂ᵢ⋃ⱼ Eᵢⱼ`, with inner codes of
/// level `level − 2` (clopen when `level` is 2).
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaPrimePair {
    pub union_form: BorelCode,
    pub intersection_form: BorelCode,
    pub level: usize,
}

impl DeltaPrimePair {
    /// `Dᵢⱼ`.
    pub fn d(&self, i: Nat, j: Nat) -> BorelCode {
        inner(&self.union_form, i, j)
    }

    /// `Eᵢⱼ`.
    pub fn e(&self, i: Nat, j: Nat) -> BorelCode {
        inner(&self.intersection_form, i, j)
    }

    /// Both forms of a constant set.
    pub fn constant(whole: bool, level: usize) -> Self {
        let c = if whole { BorelCode::whole() } else { BorelCode::empty() };
        DeltaPrimePair {
            union_form: BorelCode::IndexedUnion(Family::constant(BorelCode::IndexedIntersection(
                Family::constant(c.clone()),
            ))),
            intersection_form: BorelCode::IndexedIntersection(Family::constant(
                BorelCode::IndexedUnion(Family::constant(c)),
            )),
            level,
        }
    }
}

fn inner(form: &BorelCode, i: Nat, j: Nat) -> BorelCode {
    let row = form.child(i).expect("normal form has indexed rows");
    row.child(j).unwrap_or(row)
}

/// Certificate sentence for an inner code: a quantifier-free sentence for
/// clopen codes, the leaf's own sentence otherwise.
pub fn certificate(c: &BorelCode) -> Result<Sentence> {
    Ok(match c {
        BorelCode::Cylinder(s) => Sentence::Plain(Formula::extends(s.items())),
        BorelCode::CoCylinder(s) => Sentence::Plain(Formula::extends(s.items()).not()),
        BorelCode::Leaf(s) => s.clone(),
        BorelCode::Union(cs) | BorelCode::Intersection(cs) => {
            let mut parts = Vec::new();
            for c in cs {
                match certificate(c)? {
                    Sentence::Plain(f) => parts.push(f),
                    Sentence::Certified { .. } => {
                        return Err(Error::MalformedNormalForm(
                            "certified leaves cannot be combined".into(),
                        ))
                    }
                }
            }
            let union = matches!(c, BorelCode::Union(_));
            Sentence::Plain(match parts.len() {
                0 if union => Formula::False,
                0 => Formula::True,
                1 => parts.pop().expect("one part"),
                _ if union => Formula::Or(parts),
                _ => Formula::And(parts),
            })
        }
        other => {
            return Err(Error::MalformedNormalForm(format!(
                "no certificate for inner code {other:?}"
            )))
        }
    })
}

/// Σ₁ (or Π₁ with `to_pi`) form of a Δ⁰₁ inner code, as an indexed family
/// over sentence leaves. Clopen codes are their own forms.
pub(crate) fn level_one_form(c: &BorelCode, to_pi: bool) -> Option<BorelCode> {
    match c {
        BorelCode::Leaf(Sentence::Certified { sigma, pi }) => {
            sentence_to_code(if to_pi { pi } else { sigma }).ok()
        }
        BorelCode::Leaf(Sentence::Plain(f)) if !f.is_quantifier_free() => sentence_to_code(f).ok(),
        _ => None,
    }
}

/// `⋃ᵢ [φ(x|ī)]` for `∃x φ`, `⋂ᵢ [φ(x|ī)]` for `∀x φ`.
pub fn sentence_to_code(phi: &Formula) -> Result<BorelCode> {
    if let Some(v) = phi.free_vars().into_iter().next() {
        return Err(Error::FreeVariable(v));
    }
    let p = prenex(phi);
    if p.prefix.len() != 1 {
        return Err(Error::Shape(format!(
            "expected one quantifier, found {} in {phi}",
            p.prefix.len()
        )));
    }
    let (q, var) = p.prefix[0].clone();
    let body = p.matrix;
    if !body.free_vars().contains(&var) {
        // vacuous quantifier: the body is a closed quantifier-free sentence
        let sig = crate::logic::Signature::standard();
        return Ok(crate::logic::clopen_set(&sig, &body).unwrap_or(BorelCode::leaf(body)));
    }
    let fam = Family::Substitution { var, body };
    Ok(match q {
        Quantifier::Exists => BorelCode::IndexedUnion(fam),
        Quantifier::Forall => BorelCode::IndexedIntersection(fam),
    })
}

fn is_inner_ok(c: &BorelCode, level: usize) -> bool {
    match level {
        2 => c.is_clopen_leaf(),
        3 => {
            c.is_clopen_leaf()
                || matches!(c, BorelCode::Leaf(s) if crate::logic::classify(s.primary()).level <= 1)
        }
        _ => false,
    }
}

/// Pads a code into `⋃⋂` shape (or `⋂⋃` with `intersection_outer`).
fn pad(c: &BorelCode, intersection_outer: bool, level: usize) -> Result<BorelCode> {
    if is_inner_ok(c, level) {
        let inner = Family::constant(c.clone());
        return Ok(if intersection_outer {
            BorelCode::IndexedIntersection(Family::constant(BorelCode::IndexedUnion(inner)))
        } else {
            BorelCode::IndexedUnion(Family::constant(BorelCode::IndexedIntersection(inner)))
        });
    }
    let (outer_ok, fam) = match c {
        BorelCode::IndexedUnion(f) => (!intersection_outer, f),
        BorelCode::IndexedIntersection(f) => (intersection_outer, f),
        _ => {
            return Err(Error::MalformedNormalForm(format!(
                "expected an indexed family, got {c:?}"
            )))
        }
    };
    let first = fam.child(0);
    let nested = first.family().is_some();
    if !outer_ok && nested {
        return Err(Error::MalformedNormalForm("outer family has the wrong kind".into()));
    }
    if !nested {
        // one level deep: a Σ₁ or Π₁ set
        for i in 0..CHECK_CHILDREN {
            if !is_inner_ok(&fam.child(i), level) {
                return Err(Error::MalformedNormalForm(format!("child {i} is not a valid leaf")));
            }
        }
        return Ok(if outer_ok {
            // ⋃ᵢ cᵢ = ⋃ᵢ ⋂ const cᵢ
            let lifted = Family::Lift {
                inner: Box::new(fam.clone()),
                rows_are_intersections: !intersection_outer,
            };
            if intersection_outer {
                BorelCode::IndexedIntersection(lifted)
            } else {
                BorelCode::IndexedUnion(lifted)
            }
        } else {
            // a family of the row kind becomes the single constant row
            let row = c.clone();
            if intersection_outer {
                BorelCode::IndexedIntersection(Family::constant(row))
            } else {
                BorelCode::IndexedUnion(Family::constant(row))
            }
        });
    }
    for i in 0..CHECK_CHILDREN {
        let row = fam.child(i);
        let row_ok = match (&row, intersection_outer) {
            (BorelCode::IndexedIntersection(_), false) | (BorelCode::IndexedUnion(_), true) => true,
            _ => false,
        };
        if !row_ok {
            return Err(Error::MalformedNormalForm(format!("row {i} has the wrong kind")));
        }
        for j in 0..CHECK_CHILDREN {
            if !is_inner_ok(&row.child(j).expect("indexed row"), level) {
                return Err(Error::MalformedNormalForm(format!("leaf ({i},{j}) is not valid")));
            }
        }
    }
    Ok(c.clone())
}

/// Packages a `⋃⋂` form and a `⋂⋃` form of one set as a Δ′ pair of the
/// given level (2 or 3), padding lower-level shapes with constant families.
pub fn delta_to_delta_prime(s_form: &BorelCode, p_form: &BorelCode, level: usize) -> Result<DeltaPrimePair> {
    if !(2..=3).contains(&level) {
        return Err(Error::LevelTooDeep(level));
    }
    Ok(DeltaPrimePair {
        union_form: pad(s_form, false, level)?,
        intersection_form: pad(p_form, true, level)?,
        level,
    })
}

/// Σ⁰ and Π⁰ codes of the pair's set at level `level − 1`. At level 2 the
/// pair already is such a code pair; at level 3 the two inner index levels
/// are merged using the Π₁ forms of the `D` codes and the Σ₁ forms of the
/// `E` codes.
pub fn delta_prime_to_delta(d: &DeltaPrimePair) -> Result<(BorelCode, BorelCode)> {
    match d.level {
        2 => Ok((d.union_form.clone(), d.intersection_form.clone())),
        3 => {
            let rows = |form: &BorelCode| {
                form.family()
                    .cloned()
                    .ok_or_else(|| Error::MalformedNormalForm("pair form is not indexed".into()))
            };
            let s = BorelCode::IndexedUnion(Family::Collapse {
                outer: Box::new(rows(&d.union_form)?),
                to_pi: true,
            });
            let p = BorelCode::IndexedIntersection(Family::Collapse {
                outer: Box::new(rows(&d.intersection_form)?),
                to_pi: false,
            });
            Ok((s, p))
        }
        l => Err(Error::LevelTooDeep(l)),
    }
}

/// The syntactic level a pair's forms should have after conversion.
pub fn expected_class(d: &DeltaPrimePair) -> (CodeClass, CodeClass) {
    let n = d.level - 1;
    (CodeClass::Sigma(n.max(2)), CodeClass::Pi(n.max(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baire::Point;
    use crate::borel::{catalog, member, Verdict};
    use crate::logic::{Signature, Term};

    fn pt(pre: &[Nat], per: &[Nat]) -> Point {
        Point::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    #[test]
    fn existential_sentence_to_union() {
        let phi = Formula::exists("x", Formula::eq(Term::f(Term::var("x")), Term::Const(0)));
        let c = sentence_to_code(&phi).unwrap();
        let sig = Signature::standard();
        assert!(matches!(c, BorelCode::IndexedUnion(Family::Substitution { .. })));
        assert_eq!(c.child(2).unwrap(), BorelCode::leaf(Formula::f_equals(2, 0)));
        assert_eq!(member(&sig, &c, &pt(&[0], &[1]), 5).unwrap(), Verdict::In);
    }

    #[test]
    fn vacuous_quantifier_gives_constant_set() {
        let phi = Formula::exists("x", Formula::eq(Term::Const(0), Term::Const(0)));
        assert_eq!(sentence_to_code(&phi).unwrap(), BorelCode::whole());
    }

    #[test]
    fn deeper_sentences_rejected() {
        let phi = Formula::forall("x", Formula::exists("y", Formula::eq(Term::f(Term::var("y")), Term::var("x"))));
        assert!(sentence_to_code(&phi).is_err());
    }

    #[test]
    fn level_two_is_identity() {
        let d = catalog::pair(&catalog::CatalogSet::ExactlyZeros(1)).unwrap();
        let (s, p) = delta_prime_to_delta(&d).unwrap();
        assert_eq!(s, d.union_form);
        assert_eq!(p, d.intersection_form);
    }

    #[test]
    fn constant_pairs() {
        let sig = Signature::standard();
        let d = DeltaPrimePair::constant(false, 3);
        let (s, p) = delta_prime_to_delta(&d).unwrap();
        let x = pt(&[1], &[2]);
        assert_eq!(member(&sig, &s, &x, 3).unwrap(), Verdict::Out);
        assert_eq!(member(&sig, &p, &x, 3).unwrap(), Verdict::Out);
        let w = delta_to_delta_prime(&BorelCode::whole(), &BorelCode::whole(), 2).unwrap();
        assert_eq!(member(&sig, &w.union_form, &x, 0).unwrap(), Verdict::In);
    }

    #[test]
    fn open_set_packs_into_a_level_three_pair() {
        let sig = Signature::standard();
        // f(0) = 1 or f(0) = 2, written as a union of cylinders
        let open = BorelCode::IndexedUnion(Family::Explicit {
            items: vec![BorelCode::cylinder(&[1]), BorelCode::cylinder(&[2])],
            tail: Box::new(BorelCode::empty()),
        });
        let d = delta_to_delta_prime(&open, &open, 3).unwrap();
        let (s, p) = delta_prime_to_delta(&d).unwrap();
        for x in [pt(&[1], &[0]), pt(&[2, 2], &[5]), pt(&[0], &[1]), pt(&[], &[3])] {
            let truth = x.at(0) == 1 || x.at(0) == 2;
            for c in [&s, &p, &d.union_form, &d.intersection_form] {
                let v = member(&sig, c, &x, 50).unwrap();
                assert_ne!(v, Verdict::from_bool(!truth));
            }
        }
    }
}
