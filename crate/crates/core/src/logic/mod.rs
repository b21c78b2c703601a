// SPDX-License-Identifier: Apache-2.0

//! The implemented fragment of L_max.

mod classify;
mod clopen;
mod enumerate;
mod eval;
mod signature;
mod syntax;

pub use classify::{classify, classify_certificate, prenex, Prenex, Quantifier, SentenceClass, Shape};
pub use clopen::clopen_set;
pub use enumerate::{atom_index_bound, enumerate, Enumeration, Enumerator};
pub use eval::{
    determination_bound, determined_by, evaluate, evaluate_sentence, in_periodic_fragment,
    sentence_bit, truth_bit, Truth,
};
pub use signature::{
    Fragment, FunctionImpl, FunctionSymbol, FunctionalImpl, FunctionalSymbol, PredicateImpl,
    PredicateSymbol, Signature,
};
pub use syntax::{negated, Formula, Sentence, Term};
