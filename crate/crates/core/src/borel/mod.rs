// SPDX-License-Identifier: Apache-2.0

//! Borel codes over Baire space, Δ′ pairs and their transformers, the
//! code-to-sentence compiler, and the example catalog.

pub mod catalog;
mod code;
mod compile;
mod expand;
mod member;
mod transform;

pub use catalog::{exact_oracle, CatalogSet};
pub use code::{BorelCode, CodeClass, Family, GuessEvent, GuessSource, Rule, Template};
pub use compile::{compile_to_sentence, Compiled, MAX_COMPILE_LEVEL};
pub use expand::{expand, Expansion, MAX_EXPANSION_ROUND};
pub use member::{member, Verdict};
pub use transform::{
    certificate, delta_prime_to_delta, delta_to_delta_prime, expected_class, sentence_to_code,
    DeltaPrimePair,
};
pub(crate) use transform::level_one_form;
