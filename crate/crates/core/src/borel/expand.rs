// SPDX-License-Identifier: Apache-2.0

//! Explicit finite expansion of guess-event leaves.

use serde::{Deserialize, Serialize};

use super::code::{BorelCode, GuessEvent};
use crate::error::{Error, Result};

/// Largest round with an explicit expansion (2¹³ bit vectors).
pub const MAX_EXPANSION_ROUND: usize = 12;

/// `{f : G(f(φ₀), …, f(φ_j)) = bit}` as the list of bit vectors `ā` with
/// `G(ā) = bit`, each standing for `⋂ₖ [φₖ]^{aₖ}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expansion {
    pub guesser: String,
    pub round: usize,
    pub bit: bool,
    pub sentences: Vec<String>,
    pub vectors: Vec<Vec<u8>>,
    #[serde(skip)]
    code: Option<BorelCode>,
}

impl Expansion {
    pub fn code(&self) -> &BorelCode {
        self.code.as_ref().expect("built by expand")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

pub fn expand(e: &GuessEvent) -> Result<Expansion> {
    let j = e.round;
    if j > MAX_EXPANSION_ROUND {
        return Err(Error::Shape(format!(
            "explicit expansion is limited to rounds ≤ {MAX_EXPANSION_ROUND}, got {j}"
        )));
    }
    let listing = &e.source.listing;
    let sentences: Vec<_> = (0..=j).map(|k| listing.sentence(k)).collect();
    let mut vectors = Vec::new();
    let mut cases = Vec::new();
    for mask in 0u32..(1 << (j + 1)) {
        let bits: Vec<bool> = (0..=j).map(|k| mask >> k & 1 == 1).collect();
        if e.source.guesser.guess(&bits) != e.bit {
            continue;
        }
        vectors.push(bits.iter().map(|&b| u8::from(b)).collect());
        cases.push(BorelCode::Intersection(
            bits.iter()
                .zip(&sentences)
                .map(|(&b, s)| BorelCode::Leaf(if b { s.clone() } else { s.negate() }))
                .collect(),
        ));
    }
    Ok(Expansion {
        guesser: e.source.guesser.name(),
        round: j,
        bit: e.bit,
        sentences: sentences.iter().map(ToString::to_string).collect(),
        vectors,
        code: Some(BorelCode::Union(cases)),
    })
}
