// SPDX-License-Identifier: Apache-2.0

//! One family `Z` serving as both the `⋃⋂` and the `⋂⋃` representation.

use std::sync::Arc;

use super::extract::guesser_to_codes;
use super::synth::{synthesize_mu_nu, MuNuGuesser, SynthesisSpec};
use crate::borel::{delta_to_delta_prime, BorelCode, DeltaPrimePair};
use crate::error::Result;
use crate::logic::Signature;

pub struct Unified {
    /// `⋃ᵢ⋂ⱼ Zᵢⱼ` and `⋂ᵢ⋃ⱼ Zᵢⱼ` with `Zᵢⱼ = [G_{i+1+j} = 1]`.
    pub z: DeltaPrimePair,
    pub guesser: Arc<MuNuGuesser>,
}

/// Packages `x` (`⋃⋂`) and `y` (`⋂⋃`) as a Δ′ pair, synthesizes the μ/ν
/// guesser, and reads both representations back off it.
pub fn unify_family(sig: Arc<Signature>, x: &BorelCode, y: &BorelCode, level: usize) -> Result<Unified> {
    let pair = delta_to_delta_prime(x, y, level)?;
    let guesser = synthesize_mu_nu(sig, &SynthesisSpec::new(pair))?;
    let (u, i) = guesser_to_codes(guesser.clone(), Arc::clone(guesser.listing()));
    Ok(Unified {
        z: DeltaPrimePair {
            union_form: u,
            intersection_form: i,
            level,
        },
        guesser,
    })
}
