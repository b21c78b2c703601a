// SPDX-License-Identifier: Apache-2.0

//! Codes for the set a bit guesser converges to 1 on.

use std::sync::Arc;

use super::guesser::BitGuesser;
use super::listing::Listing;
use crate::borel::{BorelCode, Family, GuessSource};

/// `⋃ᵢ ⋂_{j>i} [Gⱼ = 1]` and `⋂ᵢ ⋃_{j>i} [Gⱼ = 1]`, where `Gⱼ` is the guess
/// after facts `φ₀, …, φⱼ` of `listing`.
pub fn guesser_to_codes(g: Arc<dyn BitGuesser>, listing: Arc<Listing>) -> (BorelCode, BorelCode) {
    let source = GuessSource::new(g, listing);
    (
        BorelCode::IndexedUnion(Family::GuessRows {
            source: source.clone(),
            bit: true,
            rows_are_intersections: true,
        }),
        BorelCode::IndexedIntersection(Family::GuessRows {
            source,
            bit: true,
            rows_are_intersections: false,
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baire::Point;
    use crate::borel::{member, Verdict};
    use crate::guessing::ConstGuesser;
    use crate::logic::Signature;

    #[test]
    fn constant_guessers() {
        let sig = Arc::new(Signature::standard());
        let listing = Arc::new(Listing::atoms(Arc::clone(&sig)));
        let p = Point::new(vec![2], vec![1, 0]).unwrap();
        let (u, _) = guesser_to_codes(Arc::new(ConstGuesser(true)), Arc::clone(&listing));
        assert_eq!(member(&sig, &u, &p, 3).unwrap(), Verdict::In);
        let (_, i) = guesser_to_codes(Arc::new(ConstGuesser(false)), listing);
        assert_eq!(member(&sig, &i, &p, 2).unwrap(), Verdict::Out);
    }
}
