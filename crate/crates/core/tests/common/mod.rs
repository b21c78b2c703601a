// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use lopsided::baire::{Nat, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_2026;

/// Seeded eventually periodic points: values 0..=3, preamble ≤ 4, period ≤ 3.
pub fn corpus(n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_point(&mut rng)).collect()
}

pub fn random_point(rng: &mut impl Rng) -> Point {
    let pre: Vec<Nat> = (0..rng.gen_range(0..=4)).map(|_| rng.gen_range(0..=3)).collect();
    let per: Vec<Nat> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=3)).collect();
    Point::new(pre, per).expect("nonempty period")
}

pub fn pt(pre: &[Nat], per: &[Nat]) -> Point {
    Point::new(pre.to_vec(), per.to_vec()).unwrap()
}
