// SPDX-License-Identifier: Apache-2.0

//! The s-expression input language.
//!
//! ```text
//! (point :pre (3 1) :per (2))
//! (forall x (exists y (= (f y) x)))
//! (iunion (template first-repeat))
//! (catalog exactly-zeros :k 2)
//! (spec :level 2 :union <code> :inter <code> :fragment () :class qf :fuel 1000)
//! ```

mod print;
mod read;
mod sexpr;

pub use print::{print_class, print_code, print_family, print_spec};
pub use read::{
    parse, parse_catalog, parse_code, parse_point, parse_sentence, parse_spec, Artifact, Reader, SpecText,
};
pub use sexpr::{parse_sexpr, Node, SExpr};
