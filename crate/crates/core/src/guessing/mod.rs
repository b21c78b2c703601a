// SPDX-License-Identifier: Apache-2.0

//! Guessers over moves and over fact streams.

mod extract;
mod guesser;
mod heuristics;
mod listing;
mod synth;
mod translate;
mod unify;

pub use extract::guesser_to_codes;
pub use guesser::{BitGuesser, BitSession, ConstGuesser, FiniteStateGuesser, FnGuesser, NatGuesser, NatSession};
pub use heuristics::{heuristic, heuristics, Heuristic, Stats};
pub use listing::{FactStream, Listing, Role};
pub use synth::{synthesize_mu_nu, MuNuGuesser, MuNuStep, SynthesisSpec};
pub use translate::{
    prefix_to_sentence_guesser, sentence_to_prefix_guesser, AppearsGuesser, DeterminedGuesser,
};
pub use unify::{unify_family, Unified};

pub(crate) use listing::undecided;
