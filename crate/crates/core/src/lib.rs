// SPDX-License-Identifier: Apache-2.0

//! Guessers for Borel subsets of Baire space, the sentences and codes that
//! describe them, and the guessing game.

pub mod baire;
pub mod borel;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod game;
pub mod guessing;
pub mod logic;

pub use error::{Error, Result};
