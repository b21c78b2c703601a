// SPDX-License-Identifier: Apache-2.0

//! Finitely presented points of Baire space and finite prefixes.
//!
//! A [`Point`] is an eventually periodic sequence `preamble ⌢ period ⌢ period ⌢ …`.
//! Construction canonicalizes (shortest period, then shortest preamble), so two
//! points are extensionally equal exactly when they are structurally equal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A natural number.
pub type Nat = u64;

/// A finite sequence of naturals, an element of ℕ^<ℕ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Prefix(Vec<Nat>);

impl Prefix {
    pub fn new(items: Vec<Nat>) -> Self {
        Prefix(items)
    }

    pub fn empty() -> Self {
        Prefix(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn items(&self) -> &[Nat] {
        &self.0
    }

    pub fn get(&self, n: usize) -> Option<Nat> {
        self.0.get(n).copied()
    }

    /// True when `self` is an initial segment of `other`.
    pub fn is_initial_segment_of(&self, other: &Prefix) -> bool {
        self.len() <= other.len() && other.0[..self.len()] == self.0[..]
    }

    pub fn push(&mut self, v: Nat) {
        self.0.push(v);
    }

    pub fn extended(&self, v: Nat) -> Prefix {
        let mut items = self.0.clone();
        items.push(v);
        Prefix(items)
    }

    pub fn truncated(&self, n: usize) -> Prefix {
        Prefix(self.0[..n.min(self.len())].to_vec())
    }
}

impl From<Vec<Nat>> for Prefix {
    fn from(v: Vec<Nat>) -> Self {
        Prefix(v)
    }
}

impl From<&[Nat]> for Prefix {
    fn from(v: &[Nat]) -> Self {
        Prefix(v.to_vec())
    }
}

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// An eventually periodic element of ℕ^ℕ, kept in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    preamble: Vec<Nat>,
    period: Vec<Nat>,
}

impl Point {
    pub fn new(preamble: Vec<Nat>, period: Vec<Nat>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let mut p = Point { preamble, period };
        p.canonicalize();
        Ok(p)
    }

    /// The constant sequence `v, v, v, …`.
    pub fn constant(v: Nat) -> Self {
        Point {
            preamble: Vec::new(),
            period: vec![v],
        }
    }

    fn canonicalize(&mut self) {
        let n = self.period.len();
        let shortest = (1..=n)
            .filter(|d| n % d == 0)
            .find(|&d| (0..n).all(|i| self.period[i] == self.period[i % d]))
            .unwrap_or(n);
        self.period.truncate(shortest);
        // Fold trailing preamble entries into the period by rotating it.
        while let Some(&last) = self.preamble.last() {
            if last != *self.period.last().expect("period is nonempty") {
                break;
            }
            self.preamble.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preamble(&self) -> &[Nat] {
        &self.preamble
    }

    pub fn period(&self) -> &[Nat] {
        &self.period
    }

    /// f(n).
    pub fn at(&self, n: usize) -> Nat {
        if n < self.preamble.len() {
            self.preamble[n]
        } else {
            self.period[(n - self.preamble.len()) % self.period.len()]
        }
    }

    /// (f(0), …, f(n−1)).
    pub fn prefix(&self, n: usize) -> Prefix {
        Prefix((0..n).map(|i| self.at(i)).collect())
    }

    pub fn extends(&self, s: &Prefix) -> bool {
        s.items().iter().enumerate().all(|(i, &v)| self.at(i) == v)
    }

    /// Length of preamble plus one full period: every value the point takes
    /// is attained at some index below this bound.
    pub fn horizon(&self) -> usize {
        self.preamble.len() + self.period.len()
    }

    /// Number of indices `n` with `f(n) = v`, or `None` if infinitely many.
    pub fn count_of(&self, v: Nat) -> Option<usize> {
        if self.period.contains(&v) {
            None
        } else {
            Some(self.preamble.iter().filter(|&&x| x == v).count())
        }
    }

    /// Values occurring infinitely often.
    pub fn recurring(&self) -> &[Nat] {
        &self.period
    }

    /// Number of positions `< n` holding `v`.
    pub fn count_below(&self, v: Nat, n: usize) -> usize {
        let pre = self.preamble.len().min(n);
        let mut count = self.preamble[..pre].iter().filter(|&&x| x == v).count();
        if n > self.preamble.len() {
            let tail = n - self.preamble.len();
            let per = self.period.len();
            let hits = self.period.iter().filter(|&&x| x == v).count();
            count += (tail / per) * hits;
            count += self.period[..tail % per].iter().filter(|&&x| x == v).count();
        }
        count
    }

    /// Last index holding `v`, `Ok(None)` if `v` never occurs, `Err(())` if it
    /// occurs infinitely often.
    #[allow(clippy::result_unit_err)]
    pub fn last_index_of(&self, v: Nat) -> std::result::Result<Option<usize>, ()> {
        if self.period.contains(&v) {
            Err(())
        } else {
            Ok(self.preamble.iter().rposition(|&x| x == v))
        }
    }

    /// Index of the `k`-th occurrence (0-based) of `v`, if any.
    pub fn nth_index_of(&self, v: Nat, k: usize) -> Option<usize> {
        let mut seen = 0;
        for i in 0..self.horizon() {
            if self.at(i) == v {
                if seen == k {
                    return Some(i);
                }
                seen += 1;
            }
        }
        let hits = self.period.iter().filter(|&&x| x == v).count();
        if hits == 0 {
            return None;
        }
        // Remaining occurrences repeat every full period.
        let rest = k - seen;
        let cycles = rest / hits;
        let within = rest % hits;
        let offset = self
            .period
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == v)
            .nth(within)
            .map(|(i, _)| i)?;
        Some(self.horizon() + cycles * self.period.len() + offset)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(point :pre {} :per {})",
            Prefix(self.preamble.clone()),
            Prefix(self.period.clone())
        )
    }
}

/// Cantor pairing ℕ×ℕ → ℕ.
pub fn pair(x: Nat, y: Nat) -> Nat {
    let s = x + y;
    s * (s + 1) / 2 + y
}

/// Inverse of [`pair`].
pub fn unpair(z: Nat) -> (Nat, Nat) {
    // largest w with w(w+1)/2 <= z
    let mut w = (((8.0 * z as f64 + 1.0).sqrt() - 1.0) / 2.0) as Nat;
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    let y = z - w * (w + 1) / 2;
    (w - y, y)
}

/// A bijection ℕ → ℕ^<ℕ: 0 ↦ (), and n+1 ↦ head ⌢ seq_of(rest) where
/// (head, rest) = unpair(n).
pub fn seq_of(mut n: Nat) -> Prefix {
    let mut items = Vec::new();
    while n > 0 {
        let (head, rest) = unpair(n - 1);
        items.push(head);
        n = rest;
    }
    Prefix(items)
}

/// `t` if `t < skip`, else `t + 1`: enumerates ℕ \ {skip}.
pub fn skipping(skip: Nat, t: Nat) -> Nat {
    if t < skip {
        t
    } else {
        t + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn pt(pre: &[Nat], per: &[Nat]) -> Point {
        Point::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    #[test]
    fn at_reads_preamble_then_period() {
        let p = pt(&[3, 1], &[2]);
        assert_eq!(p.at(0), 3);
        assert_eq!(p.at(5), 2);
        assert_eq!(pt(&[], &[0, 7]).at(3), 7);
    }

    #[test]
    fn prefixes() {
        let p = pt(&[3, 1], &[2]);
        assert_eq!(p.prefix(4), Prefix::new(vec![3, 1, 2, 2]));
        assert_eq!(p.prefix(0), Prefix::empty());
        assert_eq!(pt(&[], &[5]).prefix(2), Prefix::new(vec![5, 5]));
    }

    #[test]
    fn extension() {
        let p = pt(&[1], &[0]);
        assert!(p.extends(&Prefix::new(vec![1, 0, 0])));
        assert!(!p.extends(&Prefix::new(vec![0])));
        assert!(p.extends(&Prefix::empty()));
    }

    #[test]
    fn empty_period_rejected() {
        assert!(matches!(Point::new(vec![1], vec![]), Err(Error::EmptyPeriod)));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(pt(&[1, 2, 1, 2], &[1, 2, 1, 2]), pt(&[], &[1, 2]));
        assert_eq!(pt(&[0, 5], &[5, 5]), pt(&[0], &[5]));
        assert_eq!(pt(&[2, 1], &[2, 1]).period(), &[2, 1]);
    }

    #[test]
    fn counting() {
        let p = pt(&[0, 3, 0], &[4, 0]);
        assert_eq!(p.count_of(0), None);
        assert_eq!(p.count_of(3), Some(1));
        assert_eq!(p.count_below(0, 7), (0..7).filter(|&i| p.at(i) == 0).count());
        for k in 0..10 {
            let brute = (0..100).filter(|&i| p.at(i) == 0).nth(k);
            assert_eq!(p.nth_index_of(0, k), brute);
        }
        assert_eq!(p.nth_index_of(3, 1), None);
        assert_eq!(pt(&[9, 0, 1], &[5]).last_index_of(0), Ok(Some(1)));
    }

    #[test]
    fn pairing_is_bijective_on_small_range() {
        for z in 0..5000 {
            let (x, y) = unpair(z);
            assert_eq!(pair(x, y), z);
        }
        let seqs: HashSet<Prefix> = (0..5000).map(seq_of).collect();
        assert_eq!(seqs.len(), 5000);
        assert_eq!(seq_of(0), Prefix::empty());
    }

    proptest::proptest! {
        #[test]
        fn prefix_is_initial_segment(pre in proptest::collection::vec(0u64..5, 0..5),
                                     per in proptest::collection::vec(0u64..5, 1..4),
                                     n in 0usize..20, m in 0usize..20) {
            let p = Point::new(pre.clone(), per.clone()).unwrap();
            let (a, b) = (n.min(m), n.max(m));
            proptest::prop_assert!(p.prefix(a).is_initial_segment_of(&p.prefix(b)));
            proptest::prop_assert!(p.extends(&p.prefix(b)));
        }

        #[test]
        fn canonical_form_preserves_values(pre in proptest::collection::vec(0u64..3, 0..6),
                                           per in proptest::collection::vec(0u64..3, 1..5)) {
            let p = Point::new(pre.clone(), per.clone()).unwrap();
            let raw = |n: usize| if n < pre.len() { pre[n] } else { per[(n - pre.len()) % per.len()] };
            for n in 0..60 {
                proptest::prop_assert_eq!(p.at(n), raw(n));
            }
        }

        #[test]
        fn structural_equality_is_extensional(a in proptest::collection::vec(0u64..2, 0..4),
                                              ap in proptest::collection::vec(0u64..2, 1..4),
                                              b in proptest::collection::vec(0u64..2, 0..4),
                                              bp in proptest::collection::vec(0u64..2, 1..4)) {
            let p = Point::new(a, ap).unwrap();
            let q = Point::new(b, bp).unwrap();
            let bound = p.preamble().len() + q.preamble().len() + p.period().len() * q.period().len();
            let agree = (0..bound).all(|n| p.at(n) == q.at(n));
            proptest::prop_assert_eq!(agree, p == q);
        }
    }
}
