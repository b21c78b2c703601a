// SPDX-License-Identifier: Apache-2.0

//! Acceptance checks, one line per criterion. Expected values come from
//! the brute-force helpers at the top of this file, not from the library's
//! own deciders.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use lopsided::baire::{seq_of, Nat, Point, Prefix};
use lopsided::borel::catalog::{eventually_zero_by_cylinders, pair};
use lopsided::borel::{
    compile_to_sentence, exact_oracle, expand, member, BorelCode, CatalogSet, DeltaPrimePair, Family, GuessEvent,
    GuessSource, Template, Verdict,
};
use lopsided::game::{diagonalize, run_game, Bob, GameConfig, GameMode};
use lopsided::guessing::{
    guesser_to_codes, heuristics, prefix_to_sentence_guesser, sentence_to_prefix_guesser, synthesize_mu_nu,
    unify_family, BitGuesser, FiniteStateGuesser, MuNuGuesser, NatGuesser, SynthesisSpec,
};
use lopsided::logic::{
    determination_bound, determined_by, evaluate, evaluate_sentence, Enumeration, Enumerator, Formula, Sentence,
    SentenceClass, Signature, Term, Truth,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{corpus, random_point, CORPUS_SEED};

// ---------------------------------------------------------------- oracles

/// Membership in a clopen code by direct recursion.
fn clopen_in(sig: &Signature, c: &BorelCode, p: &Point) -> bool {
    match c {
        BorelCode::Cylinder(s) => p.extends(s),
        BorelCode::CoCylinder(s) => !p.extends(s),
        BorelCode::Union(cs) => cs.iter().any(|c| clopen_in(sig, c, p)),
        BorelCode::Intersection(cs) => cs.iter().all(|c| clopen_in(sig, c, p)),
        BorelCode::Leaf(s) => match evaluate_sentence(sig, s, p, 0).unwrap() {
            Truth::True => true,
            Truth::False => false,
            Truth::Unknown => panic!("clopen leaf {s} undecided"),
        },
        other => panic!("not clopen: {other:?}"),
    }
}

const ROWS: Nat = 16;
const COLS: Nat = 64;

/// Least row `i < ROWS` with `d(i, j) ∋ p` for every `j < COLS`.
fn union_form_bf(sig: &Signature, d: &DeltaPrimePair, p: &Point) -> Option<Nat> {
    (0..ROWS).find(|&i| (0..COLS).all(|j| clopen_in(sig, &d.d(i, j), p)))
}

/// Every row `i < ROWS` has some `j < COLS` with `e(i, j) ∋ p`.
fn intersection_form_bf(sig: &Signature, d: &DeltaPrimePair, p: &Point) -> bool {
    (0..ROWS).all(|i| (0..COLS).any(|j| clopen_in(sig, &d.e(i, j), p)))
}

/// Largest index of `f` read by the atomic sentence `φ` on `p`.
fn max_f_index(phi: &Formula, p: &Point) -> Option<Nat> {
    fn term(t: &Term, p: &Point, best: &mut Option<Nat>) -> Nat {
        match t {
            Term::Const(n) => *n,
            Term::F(inner) => {
                let i = term(inner, p, best);
                *best = Some(best.map_or(i, |b| b.max(i)));
                p.at(i as usize)
            }
            other => panic!("not atomic: {other}"),
        }
    }
    fn walk(phi: &Formula, p: &Point, best: &mut Option<Nat>) {
        match phi {
            Formula::Eq(a, b) => {
                term(a, p, best);
                term(b, p, best);
            }
            Formula::Not(q) => walk(q, p, best),
            Formula::And(qs) | Formula::Or(qs) => qs.iter().for_each(|q| walk(q, p, best)),
            Formula::True | Formula::False => {}
            other => panic!("not atomic: {other}"),
        }
    }
    let mut best = None;
    walk(phi, p, &mut best);
    best
}

// ---------------------------------------------------------------- harness

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, n: usize, pass: bool, what: &str, detail: String, took: Duration) {
        if !pass {
            self.failures += 1;
        }
        println!(
            "criterion {n} [{}] {what}: {detail} ({:.1} s)",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
}

fn delta2_sets() -> Vec<CatalogSet> {
    vec![
        CatalogSet::FirstValueEquals(1),
        CatalogSet::ExactlyZeros(0),
        CatalogSet::ExactlyZeros(1),
        CatalogSet::ExactlyZeros(2),
        CatalogSet::AtMostZeros(2),
        CatalogSet::EqualFirstTwo,
    ]
}

struct Synth {
    set: CatalogSet,
    pair: DeltaPrimePair,
    guesser: Arc<MuNuGuesser>,
    /// Per corpus point: certified `(round, limit)`.
    certs: Vec<Option<(usize, bool)>>,
}

// ---------------------------------------------------------------- criteria

fn criterion_1(r: &mut Report, sig: &Arc<Signature>, points: &[Point]) -> Vec<Synth> {
    let start = Instant::now();
    let mut pair_errors = 0;
    let mut wrong = 0;
    let mut worst = 0;
    let mut out = Vec::new();
    for set in delta2_sets() {
        let d = pair(&set).unwrap();
        for p in points {
            let truth = exact_oracle(&set, p);
            if union_form_bf(sig, &d, p).is_some() != truth || intersection_form_bf(sig, &d, p) != truth {
                pair_errors += 1;
            }
        }
        let g = synthesize_mu_nu(Arc::clone(sig), &SynthesisSpec::new(d.clone())).unwrap();
        let mut certs = Vec::new();
        for p in points {
            let truth = exact_oracle(&set, p);
            let cert = g.tail_certificate(g.listing(), p).unwrap();
            let ok = match cert {
                Some((round, v)) if round <= 100_000 && v == truth => {
                    worst = worst.max(round);
                    let trace = g.trace(p, round + 2000).unwrap();
                    trace[round..].iter().all(|s| s.guess == v)
                }
                _ => false,
            };
            if !ok {
                wrong += 1;
            }
            certs.push(cert);
        }
        out.push(Synth {
            set,
            pair: d,
            guesser: g,
            certs,
        });
    }
    let took = start.elapsed();
    let total = out.len() * points.len();
    r.line(
        1,
        pair_errors == 0 && wrong == 0 && took < Duration::from_secs(60),
        "Δ⁰₂ sets guessed by μ/ν",
        format!(
            "{pair_errors} pair/oracle disagreements, {}/{total} limits equal the oracle, latest stabilization at fact {worst}",
            total - wrong
        ),
        took,
    );
    out
}

fn criterion_2(r: &mut Report, sig: &Arc<Signature>, points: &[Point], synths: &[Synth]) {
    let start = Instant::now();
    let (mut checked, mut bad) = (0, 0);
    for s in synths {
        for (p, cert) in points.iter().zip(&s.certs) {
            let Some(witness) = union_form_bf(sig, &s.pair, p) else { continue };
            checked += 1;
            let rounds = cert.map_or(0, |c| c.0) + 2000;
            let trace = s.guesser.trace(p, rounds).unwrap();
            let listing = Arc::clone(s.guesser.listing());
            let cfg = GameConfig::new(GameMode::Fact(listing), rounds, 1000, 1000).unwrap();
            let game = run_game(p, &Bob::Facts(s.guesser.clone()), &cfg).unwrap();
            let mu_ok = trace.iter().all(|t| t.mu <= witness);
            let nu_ok = game
                .stabilization_index
                .is_some_and(|k| trace[k..].iter().all(|t| t.nu > t.mu));
            if !(mu_ok && nu_ok) {
                bad += 1;
                eprintln!("  {}: {p} witness {witness}, mu ok {mu_ok}, nu ok {nu_ok}", s.set);
            }
        }
    }
    r.line(
        2,
        bad == 0 && checked > 0,
        "μ/ν traces",
        format!("{}/{checked} in-set runs with μ ≤ witness and ν > μ after stabilization", checked - bad),
        start.elapsed(),
    );
}

fn criterion_3(r: &mut Report, sig: &Arc<Signature>, points: &[Point], synths: &[Synth]) {
    let start = Instant::now();
    let (mut decided, mut unsound) = (0, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 3);
    let sample: Vec<Point> = (0..50).map(|_| random_point(&mut rng)).collect();
    let (mut compared, mut mismatches) = (0, 0);
    for s in synths {
        let listing = Arc::clone(s.guesser.listing());
        let (u, i) = guesser_to_codes(s.guesser.clone(), Arc::clone(&listing));
        for p in points {
            let truth = exact_oracle(&s.set, p);
            for c in [&u, &i] {
                match member(sig, c, p, 1000).unwrap().decided() {
                    Some(v) => {
                        decided += 1;
                        if v != truth {
                            unsound += 1;
                        }
                    }
                    None => {}
                }
            }
        }
        let source = GuessSource::new(s.guesser.clone(), listing);
        for round in 0..=12 {
            for bit in [true, false] {
                let ev = GuessEvent {
                    source: source.clone(),
                    round,
                    bit,
                };
                let expansion = expand(&ev).unwrap();
                let leaf = BorelCode::GuessEvent(ev);
                for p in &sample {
                    compared += 1;
                    let a = member(sig, expansion.code(), p, 1000).unwrap();
                    let b = member(sig, &leaf, p, 1000).unwrap();
                    if a != b || a == Verdict::Unknown {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    let total = 2 * synths.len() * points.len();
    r.line(
        3,
        unsound == 0 && mismatches == 0,
        "representations from guessers",
        format!(
            "{decided}/{total} code verdicts decided, {unsound} contradict the oracle; {mismatches}/{compared} expansion mismatches"
        ),
        start.elapsed(),
    );
}

fn criterion_4(r: &mut Report, sig: &Arc<Signature>, points: &[Point]) {
    let start = Instant::now();
    const HORIZON: usize = 10_000;
    const TAIL: usize = 2_000;
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 4);
    let (mut agree, mut total) = (0, 0);
    let (mut conv_agree, mut conv_total) = (0, 0);
    for m in 0..20 {
        let g0 = Arc::new(FiniteStateGuesser::random(&format!("fs{m}"), &mut rng, 4, 4));
        let (fwd, listing) = prefix_to_sentence_guesser(Arc::clone(sig), g0.clone());
        let back = sentence_to_prefix_guesser(fwd, listing);
        for p in points {
            let mut s = back.session();
            let guesses: Vec<bool> = (0..HORIZON).map(|i| s.push(p.at(i))).collect();
            let tail = &guesses[HORIZON - TAIL..];
            let observed = tail.iter().all(|&b| b == tail[0]).then_some(tail[0]);
            let exact = g0.limit_on(p);
            total += 1;
            if observed == exact {
                agree += 1;
            }
            if exact.is_some() {
                conv_total += 1;
                if observed == exact {
                    conv_agree += 1;
                }
            }
        }
    }
    r.line(
        4,
        agree == total,
        "move→fact→move round trip",
        format!(
            "{agree}/{total} limits preserved at horizon {HORIZON} ({conv_agree}/{conv_total} where the original converges)"
        ),
        start.elapsed(),
    );
}

fn criterion_5(r: &mut Report, sig: &Arc<Signature>, points: &[Point]) {
    let start = Instant::now();
    let set = CatalogSet::ExactlyZeros(1);
    let d = pair(&set).unwrap();
    let u = unify_family(Arc::clone(sig), &d.union_form, &d.intersection_form, 2).unwrap();
    let (mut decided, mut wrong) = (0, 0);
    for p in points {
        let truth = exact_oracle(&set, p);
        let a = member(sig, &u.z.union_form, p, 1000).unwrap().decided();
        let b = member(sig, &u.z.intersection_form, p, 1000).unwrap().decided();
        for v in [a, b].into_iter().flatten() {
            if v != truth {
                wrong += 1;
            }
        }
        if a.is_some() && b.is_some() {
            decided += 1;
        }
    }
    r.line(
        5,
        wrong == 0 && decided >= 80,
        "single family Z",
        format!("{decided}/{} points decided by both forms, {wrong} wrong verdicts", points.len()),
        start.elapsed(),
    );
}

/// `⋃ₙ ⋂ₘ ⋃ₖ [s]`, `s` running over sequences of length n+m+1 ending in 0.
fn eventually_zero_sigma3() -> BorelCode {
    BorelCode::IndexedUnion(Family::rule("ez3-rows", |n| {
        BorelCode::IndexedIntersection(Family::rule("ez3-cols", move |m| {
            let len = (n + m) as usize;
            BorelCode::IndexedUnion(Family::rule("ez3-cyl", move |k| {
                let mut s: Vec<Nat> = seq_of(k).items().iter().copied().take(len).collect();
                s.resize(len, 0);
                s.push(0);
                BorelCode::Cylinder(Prefix::new(s))
            }))
        }))
    }))
}

fn criterion_6(r: &mut Report, sig: &Arc<Signature>, points: &[Point]) {
    let start = Instant::now();
    let open = BorelCode::IndexedUnion(Family::Template(Template::FirstRepeat));
    let cases = [
        ("open", 1, open.clone(), CatalogSet::EqualFirstTwo, true),
        ("closed", 1, open.complement(), CatalogSet::EqualFirstTwo, false),
        ("Σ₂ eventually-zero", 2, eventually_zero_by_cylinders(), CatalogSet::EventuallyZero, true),
        ("Σ₃ eventually-zero", 3, eventually_zero_sigma3(), CatalogSet::EventuallyZero, true),
    ];
    // search cost is fuel^depth, so deeper sentences get less fuel each
    let fuel_at = |level: usize| [0, 1000, 40, 12][level];
    let mut unsound = 0;
    let mut parts = Vec::new();
    for (name, level, code, set, positive) in cases {
        let mut s = (**sig).clone();
        let compiled = compile_to_sentence(&mut s, &code).unwrap();
        let mut decided = 0;
        for p in &points[..50] {
            let truth = exact_oracle(&set, p) == positive;
            if let Some(v) = evaluate_sentence(&s, &compiled.sentence, p, fuel_at(level)).unwrap().decided() {
                decided += 1;
                if v != truth {
                    unsound += 1;
                }
            }
        }
        parts.push(format!("{name} {decided}/50 decided at fuel {}", fuel_at(level)));
    }
    r.line(
        6,
        unsound == 0,
        "compiled sentences",
        format!("{}; {unsound} unsound", parts.join(", ")),
        start.elapsed(),
    );
}

fn criterion_7(r: &mut Report, sig: &Arc<Signature>, points: &[Point]) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 7);
    let frag = sig.fragment(["succ", "add", "le", "even", "zeros", "count"]).unwrap();
    let mut rich = Enumerator::new(Enumeration {
        fragment: frag,
        class: SentenceClass::QUANTIFIER_FREE,
        certified: Vec::new(),
    });
    let mut atomic = Enumeration::atomic().stream();
    let plain = |s: Sentence| match s {
        Sentence::Plain(f) => f,
        other => panic!("unexpected certified sentence {other}"),
    };
    let (mut ok, mut total) = (0, 0);
    for _ in 0..200 {
        let phi = plain(rich.nth(rng.gen_range(0..5000)));
        for p in &points[..20] {
            total += 1;
            let k = determination_bound(sig, &phi, p).unwrap();
            let truth = evaluate(sig, &phi, p, 0).unwrap().decided();
            if truth.is_some() && determined_by(sig, &phi, &p.prefix(k + 1)).unwrap() == truth {
                ok += 1;
            }
        }
    }
    let (mut exact, mut atomic_total) = (0, 0);
    for _ in 0..200 {
        let phi = plain(atomic.nth(rng.gen_range(0..5000)));
        for p in &points[..20] {
            atomic_total += 1;
            let k = determination_bound(sig, &phi, p).unwrap() as Nat;
            let minimal = (0..256).find(|&m| determined_by(sig, &phi, &p.prefix(m + 1)).unwrap().is_some());
            // a sentence reading no index is settled by the length-1 prefix
            let mentioned = max_f_index(&phi, p).unwrap_or(0);
            if minimal == Some(k as usize) && mentioned == k {
                exact += 1;
            } else {
                eprintln!("  {phi} on {p}: bound {k}, minimal {minimal:?}, largest index {mentioned}");
            }
        }
    }
    r.line(
        7,
        ok == total && exact == atomic_total,
        "determination",
        format!(
            "{ok}/{total} determined with the right value at the bound; atomic bound = largest index = minimal k in {exact}/{atomic_total}"
        ),
        start.elapsed(),
    );
}

fn criterion_8(r: &mut Report) {
    let start = Instant::now();
    let mut defeated = 0;
    let mut replay_ok = true;
    let hs = heuristics();
    for h in &hs {
        let rep = diagonalize(h.as_ref(), &CatalogSet::EventuallyZero, 10_000).unwrap();
        if rep.defeated(10) && rep.fuel_spent <= 10_000 {
            defeated += 1;
        } else {
            eprintln!("  {} undefeated: {} flips", h.name(), rep.flips);
        }
        let mut s = h.session();
        let replay: Vec<u8> = rep.prefix.iter().map(|&v| u8::from(s.push(v))).collect();
        let flips = replay.windows(2).filter(|w| w[0] != w[1]).count();
        replay_ok &= replay == rep.guesses && flips >= rep.flips;
    }
    let took = start.elapsed();
    r.line(
        8,
        defeated == hs.len() && replay_ok && took < Duration::from_secs(30),
        "diagonalization on eventually-zero",
        format!("{defeated}/{} heuristics defeated, replay consistent: {replay_ok}", hs.len()),
        took,
    );
}

fn main() {
    let sig = Arc::new(Signature::standard());
    let points = corpus(100, CORPUS_SEED);
    let mut r = Report { failures: 0 };
    let synths = criterion_1(&mut r, &sig, &points);
    criterion_2(&mut r, &sig, &points, &synths);
    criterion_3(&mut r, &sig, &points, &synths);
    criterion_4(&mut r, &sig, &points);
    criterion_5(&mut r, &sig, &points);
    criterion_6(&mut r, &sig, &points);
    criterion_7(&mut r, &sig, &points);
    criterion_8(&mut r);
    if r.failures > 0 {
        eprintln!("{} criteria failed", r.failures);
        std::process::exit(1);
    }
}
