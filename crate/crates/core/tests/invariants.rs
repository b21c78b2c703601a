// SPDX-License-Identifier: Apache-2.0

mod common;

use std::sync::Arc;

use lopsided::baire::{Nat, Point};
use lopsided::borel::catalog::code;
use lopsided::borel::{member, CatalogSet};
use lopsided::dsl::parse_point;
use lopsided::game::{adjudicate, run_game, Adjudication, Bob, GameConfig, GameMode};
use lopsided::guessing::{heuristics, NatGuesser};
use lopsided::logic::Signature;
use proptest::prelude::*;

use common::{corpus, pt, CORPUS_SEED};

/// Zeros counted from the preamble and period directly; `None` if infinite.
fn zeros(p: &Point) -> Option<usize> {
    if p.period().contains(&0) {
        return None;
    }
    Some(p.preamble().iter().filter(|&&v| v == 0).count())
}

fn in_set(set: &CatalogSet, p: &Point) -> bool {
    let per = p.period();
    match set {
        CatalogSet::FirstValueEquals(n) => p.at(0) == *n,
        CatalogSet::EqualFirstTwo => p.at(0) == p.at(1),
        CatalogSet::ExactlyZeros(n) => zeros(p) == Some(*n as usize),
        CatalogSet::AtMostZeros(n) => zeros(p).is_some_and(|z| z <= *n as usize),
        CatalogSet::EventuallyZero => per.iter().all(|&v| v == 0),
        CatalogSet::InfinitelyManyZeros => per.contains(&0),
        CatalogSet::EventuallyConstant => per.iter().all(|&v| v == per[0]),
        CatalogSet::Cylinder(s) => p.extends(s),
    }
}

fn catalog() -> Vec<CatalogSet> {
    vec![
        CatalogSet::FirstValueEquals(2),
        CatalogSet::EqualFirstTwo,
        CatalogSet::ExactlyZeros(1),
        CatalogSet::AtMostZeros(2),
        CatalogSet::EventuallyZero,
        CatalogSet::InfinitelyManyZeros,
        CatalogSet::EventuallyConstant,
    ]
}

#[test]
fn catalog_codes_are_sound_on_the_corpus() {
    let sig = Signature::standard();
    for set in catalog() {
        let c = code(&set);
        for p in corpus(100, CORPUS_SEED) {
            if let Some(v) = member(&sig, &c, &p, 200).unwrap().decided() {
                assert_eq!(v, in_set(&set, &p), "{set} on {p}");
            }
        }
    }
}

#[test]
fn prefix_games_on_eventually_zero_points() {
    // last-is-zero settles on 1 exactly on eventually-zero points
    let h = heuristics().into_iter().find(|h| h.name() == "last-is-zero").unwrap();
    let cfg = GameConfig::new(GameMode::Prefix, 200, 20, 100).unwrap();
    for p in corpus(50, CORPUS_SEED) {
        let trace = run_game(&p, &Bob::Moves(h.clone()), &cfg).unwrap();
        let truth = in_set(&CatalogSet::EventuallyZero, &p);
        let verdict = adjudicate(&trace, truth);
        if truth {
            assert_eq!(verdict, Adjudication::ConsistentWinBob, "{p}");
        } else if p.period().contains(&0) {
            assert_eq!(verdict, Adjudication::UnstableAtHorizon, "{p}");
        }
    }
    assert_eq!(
        adjudicate(&run_game(&pt(&[3], &[0]), &Bob::Moves(h), &cfg).unwrap(), false),
        Adjudication::ConsistentWinAlice
    );
}

fn point_strategy() -> impl Strategy<Value = Point> {
    (prop::collection::vec(0..6u64, 0..5), prop::collection::vec(0..6u64, 1..4))
        .prop_map(|(pre, per)| Point::new(pre, per).unwrap())
}

proptest! {
    #[test]
    fn printed_points_read_back(p in point_strategy()) {
        prop_assert_eq!(parse_point(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn game_trace_matches_a_fresh_session(p in point_strategy(), which in 0..20usize, rounds in 1..300usize) {
        let h: Arc<dyn NatGuesser> = heuristics().swap_remove(which);
        let cfg = GameConfig::new(GameMode::Prefix, rounds, 1, 50).unwrap();
        let trace = run_game(&p, &Bob::Moves(h.clone()), &cfg).unwrap();
        prop_assert_eq!(trace.records.len(), rounds);
        let mut s = h.session();
        for (i, r) in trace.records.iter().enumerate() {
            prop_assert_eq!(r.round, i);
            prop_assert_eq!(r.input, p.at(i));
            prop_assert_eq!(r.guess, u8::from(s.push(p.at(i))));
        }
        let flips = trace.records.windows(2).filter(|w| w[0].guess != w[1].guess).count();
        prop_assert_eq!(trace.flips, flips);
        let k = trace.stabilization_index.unwrap();
        prop_assert!(trace.records[k..].iter().all(|r| Some(r.guess) == trace.final_guess));
        prop_assert!(k == 0 || Some(trace.records[k - 1].guess) != trace.final_guess);
        prop_assert_eq!(&run_game(&p, &Bob::Moves(h), &cfg).unwrap(), &trace);
    }

    #[test]
    fn point_access_is_eventually_periodic(p in point_strategy(), i in 0..200usize) {
        let (pre, per) = (p.preamble().len(), p.period().len());
        let v: Nat = p.at(pre + i);
        prop_assert_eq!(v, p.at(pre + i + per));
        prop_assert_eq!(p.prefix(i + 1).items()[i], p.at(i));
    }
}
