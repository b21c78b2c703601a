// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("baire: a point needs a nonempty period")]
    EmptyPeriod,

    #[error("logic: unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("logic: symbol `{name}` expects {expected} arguments, got {got}")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("logic: symbol `{0}` is already registered")]
    DuplicateSymbol(String),
    #[error("logic: free variable `{0}` in a sentence")]
    FreeVariable(String),
    #[error("logic: expected a quantifier-free sentence")]
    NotQuantifierFree,
    #[error("logic: {0}")]
    Shape(String),
    #[error("logic: sentence `{0}` is undecided at the configured fuel")]
    Undecided(String),

    #[error("borel: unknown catalog set `{0}`")]
    UnknownCatalog(String),
    #[error("borel: malformed normal form: {0}")]
    MalformedNormalForm(String),
    #[error("borel: empty cylinder prefix in a compiled family")]
    EmptyPrefix,
    #[error("borel: compilation supports levels 1..=3, got {0}")]
    LevelTooDeep(usize),

    #[error("guessing: {0}")]
    Guessing(String),

    #[error("dsl: {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    /// Name of the module the error originated from.
    pub fn origin(&self) -> &'static str {
        match self {
            Error::EmptyPeriod => "baire",
            Error::UnknownSymbol(_)
            | Error::Arity { .. }
            | Error::DuplicateSymbol(_)
            | Error::FreeVariable(_)
            | Error::NotQuantifierFree
            | Error::Shape(_)
            | Error::Undecided(_) => "logic",
            Error::UnknownCatalog(_)
            | Error::MalformedNormalForm(_)
            | Error::EmptyPrefix
            | Error::LevelTooDeep(_) => "borel",
            Error::Guessing(_) => "guessing",
            Error::Parse { .. } => "dsl",
        }
    }
}
