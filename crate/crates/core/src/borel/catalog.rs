// SPDX-License-Identifier: Apache-2.0

//! Example sets with exact membership oracles and standard codes.

use std::fmt;

use super::code::{le, BorelCode, Family, Template};
use super::transform::DeltaPrimePair;
use crate::baire::{Nat, Point, Prefix};
use crate::error::{Error, Result};
use crate::logic::{Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CatalogSet {
    Cylinder(Prefix),
    FirstValueEquals(Nat),
    EventuallyZero,
    InfinitelyManyZeros,
    ExactlyZeros(Nat),
    AtMostZeros(Nat),
    EventuallyConstant,
    EqualFirstTwo,
}

impl CatalogSet {
    /// Looks a set up by DSL name. `k`/`c` and `s` are the numeric and
    /// prefix parameters where the set takes one.
    pub fn from_name(name: &str, num: Option<Nat>, s: Option<Prefix>) -> Result<Self> {
        let need = |v: Option<Nat>| v.ok_or_else(|| Error::UnknownCatalog(format!("{name} needs a parameter")));
        Ok(match name {
            "cylinder" => CatalogSet::Cylinder(
                s.ok_or_else(|| Error::UnknownCatalog("cylinder needs :s".into()))?,
            ),
            "first-value-equals" => CatalogSet::FirstValueEquals(need(num)?),
            "eventually-zero" => CatalogSet::EventuallyZero,
            "infinitely-many-zeros" => CatalogSet::InfinitelyManyZeros,
            "exactly-zeros" => CatalogSet::ExactlyZeros(need(num)?),
            "at-most-zeros" => CatalogSet::AtMostZeros(need(num)?),
            "eventually-constant" => CatalogSet::EventuallyConstant,
            "equal-first-two" => CatalogSet::EqualFirstTwo,
            other => return Err(Error::UnknownCatalog(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            CatalogSet::Cylinder(_) => "cylinder",
            CatalogSet::FirstValueEquals(_) => "first-value-equals",
            CatalogSet::EventuallyZero => "eventually-zero",
            CatalogSet::InfinitelyManyZeros => "infinitely-many-zeros",
            CatalogSet::ExactlyZeros(_) => "exactly-zeros",
            CatalogSet::AtMostZeros(_) => "at-most-zeros",
            CatalogSet::EventuallyConstant => "eventually-constant",
            CatalogSet::EqualFirstTwo => "equal-first-two",
        }
    }

    /// Whether the set is Δ⁰₂, i.e. has a [`pair`].
    pub fn is_delta2(&self) -> bool {
        !matches!(
            self,
            CatalogSet::EventuallyZero | CatalogSet::InfinitelyManyZeros | CatalogSet::EventuallyConstant
        )
    }
}

impl fmt::Display for CatalogSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogSet::Cylinder(s) => write!(f, "(catalog cylinder :s {s})"),
            CatalogSet::FirstValueEquals(c) => write!(f, "(catalog first-value-equals :c {c})"),
            CatalogSet::ExactlyZeros(k) | CatalogSet::AtMostZeros(k) => {
                write!(f, "(catalog {} :k {k})", self.name())
            }
            other => write!(f, "(catalog {})", other.name()),
        }
    }
}

/// Exact membership, read off the preamble/period structure.
pub fn exact_oracle(set: &CatalogSet, p: &Point) -> bool {
    match set {
        CatalogSet::Cylinder(s) => p.extends(s),
        CatalogSet::FirstValueEquals(c) => p.at(0) == *c,
        CatalogSet::EventuallyZero => p.period().iter().all(|&v| v == 0),
        CatalogSet::InfinitelyManyZeros => p.period().contains(&0),
        CatalogSet::ExactlyZeros(k) => p.count_of(0) == Some(*k as usize),
        CatalogSet::AtMostZeros(k) => p.count_of(0).is_some_and(|c| c as Nat <= *k),
        CatalogSet::EventuallyConstant => p.period().len() == 1,
        CatalogSet::EqualFirstTwo => p.at(0) == p.at(1),
    }
}

fn first_two_equal() -> Formula {
    Formula::eq(Term::f_at(0), Term::f_at(1))
}

/// A standard code of the set at its natural level.
pub fn code(set: &CatalogSet) -> BorelCode {
    use BorelCode::*;
    match set {
        CatalogSet::Cylinder(s) => Cylinder(s.clone()),
        CatalogSet::FirstValueEquals(c) => BorelCode::cylinder(&[*c]),
        CatalogSet::EventuallyZero => IndexedUnion(Family::Template(Template::ZeroFromRows)),
        CatalogSet::InfinitelyManyZeros => IndexedIntersection(Family::Template(Template::ZeroAfterRows)),
        CatalogSet::ExactlyZeros(k) => IndexedUnion(Family::Template(Template::ZerosExactRows { k: *k })),
        CatalogSet::AtMostZeros(k) => IndexedIntersection(Family::Template(Template::ZerosAtMost { k: *k })),
        CatalogSet::EventuallyConstant => IndexedUnion(Family::Template(Template::ConstFromRows)),
        CatalogSet::EqualFirstTwo => BorelCode::leaf(first_two_equal()),
    }
}

/// `⋃_N ⋂_j` of co-cylinders: the eventually-zero set written with
/// nonempty basic sets only.
pub fn eventually_zero_by_cylinders() -> BorelCode {
    BorelCode::IndexedUnion(Family::Template(Template::AvoidNonzeroRows))
}

fn cylinder_pair(s: &Prefix) -> DeltaPrimePair {
    if s.is_empty() {
        return DeltaPrimePair::constant(true, 2);
    }
    DeltaPrimePair {
        union_form: BorelCode::IndexedUnion(Family::constant(BorelCode::IndexedIntersection(
            Family::Template(Template::AvoidCylinder(s.clone())),
        ))),
        intersection_form: BorelCode::IndexedIntersection(Family::constant(BorelCode::IndexedUnion(
            Family::constant(BorelCode::Cylinder(s.clone())),
        ))),
        level: 2,
    }
}

/// The Δ′ pair used for guesser synthesis.
pub fn pair(set: &CatalogSet) -> Result<DeltaPrimePair> {
    use BorelCode::*;
    Ok(match set {
        CatalogSet::Cylinder(s) => cylinder_pair(s),
        CatalogSet::FirstValueEquals(c) => cylinder_pair(&Prefix::new(vec![*c])),
        CatalogSet::EqualFirstTwo => DeltaPrimePair {
            union_form: IndexedUnion(Family::Template(Template::RepeatRows)),
            intersection_form: IndexedIntersection(Family::constant(IndexedUnion(Family::constant(
                BorelCode::leaf(first_two_equal()),
            )))),
            level: 2,
        },
        CatalogSet::ExactlyZeros(k) => DeltaPrimePair {
            union_form: IndexedUnion(Family::Template(Template::ZerosExactRows { k: *k })),
            intersection_form: IndexedIntersection(Family::Template(Template::ZerosExactCover { k: *k })),
            level: 2,
        },
        CatalogSet::AtMostZeros(k) => DeltaPrimePair {
            union_form: IndexedUnion(Family::constant(IndexedIntersection(Family::Template(
                Template::ZerosAtMost { k: *k },
            )))),
            intersection_form: IndexedIntersection(Family::Template(Template::ZerosAtMostRows { k: *k })),
            level: 2,
        },
        other => {
            return Err(Error::Shape(format!("{} is not a Δ⁰₂ set", other.name())));
        }
    })
}

/// `#zeros(f(0..=n)) ≤ k` as a leaf; exposed for fixtures.
pub fn at_most_zeros_leaf(n: Nat, k: Nat) -> BorelCode {
    BorelCode::leaf(le(super::code::zeros_through(n), Term::Const(k)))
}
