// SPDX-License-Identifier: Apache-2.0

//! Printers producing text the readers accept.

use std::fmt::Write;

use super::read::SpecText;
use crate::borel::{BorelCode, Family, Template};
use crate::error::{Error, Result};
use crate::logic::{SentenceClass, Shape};

fn not_printable(what: &str) -> Error {
    Error::Shape(format!("{what} has no DSL form"))
}

pub fn print_code(c: &BorelCode) -> Result<String> {
    let mut out = String::new();
    code(&mut out, c)?;
    Ok(out)
}

pub fn print_family(f: &Family) -> Result<String> {
    let mut out = String::new();
    family(&mut out, f)?;
    Ok(out)
}

fn list(out: &mut String, head: &str, cs: &[BorelCode]) -> Result<()> {
    out.push('(');
    out.push_str(head);
    for c in cs {
        out.push(' ');
        code(out, c)?;
    }
    out.push(')');
    Ok(())
}

fn code(out: &mut String, c: &BorelCode) -> Result<()> {
    match c {
        BorelCode::Cylinder(s) => write!(out, "(cyl {s})").expect("string write"),
        BorelCode::CoCylinder(s) => write!(out, "(co-cyl {s})").expect("string write"),
        BorelCode::Union(cs) => list(out, "union", cs)?,
        BorelCode::Intersection(cs) => list(out, "inter", cs)?,
        BorelCode::IndexedUnion(f) | BorelCode::IndexedIntersection(f) => {
            out.push_str(if matches!(c, BorelCode::IndexedUnion(_)) { "(iunion " } else { "(iinter " });
            family(out, f)?;
            out.push(')');
        }
        BorelCode::Leaf(s) => write!(out, "(leaf {s})").expect("string write"),
        BorelCode::GuessEvent(_) => return Err(not_printable("a guess event")),
    }
    Ok(())
}

fn family(out: &mut String, f: &Family) -> Result<()> {
    let wrap = |out: &mut String, head: &str, inner: &Family, tail: &str| -> Result<()> {
        write!(out, "({head} ").expect("string write");
        family(out, inner)?;
        write!(out, "{tail})").expect("string write");
        Ok(())
    };
    match f {
        Family::Explicit { items, tail } if items.is_empty() => {
            out.push_str("(const ");
            code(out, tail)?;
            out.push(')');
        }
        Family::Explicit { items, tail } => {
            out.push_str("(explicit (");
            for (i, c) in items.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                code(out, c)?;
            }
            out.push_str(") :tail ");
            code(out, tail)?;
            out.push(')');
        }
        Family::Template(t) => template(out, t),
        Family::Substitution { var, body } => write!(out, "(subst {var} {body})").expect("string write"),
        Family::Complement(inner) => wrap(out, "complement", inner, "")?,
        Family::Flatten(inner) => wrap(out, "flatten", inner, "")?,
        Family::Lift {
            inner,
            rows_are_intersections,
        } => wrap(out, "lift", inner, if *rows_are_intersections { " :rows inter" } else { " :rows union" })?,
        Family::Normalize { inner, to_pi } => wrap(out, "normalize", inner, if *to_pi { " :to pi" } else { " :to sigma" })?,
        Family::Collapse { outer, to_pi } => wrap(out, "collapse", outer, if *to_pi { " :to pi" } else { " :to sigma" })?,
        Family::GuessTail { .. } | Family::GuessRows { .. } => return Err(not_printable("a guesser-backed family")),
        Family::Rule(r) => return Err(not_printable(&format!("rule family `{}`", r.name))),
    }
    Ok(())
}

fn template(out: &mut String, t: &Template) {
    let (name, params) = t.name_and_params();
    write!(out, "(template {name}").expect("string write");
    if let Template::AvoidCylinder(s) = t {
        write!(out, " :s {s}").expect("string write");
    }
    for (k, v) in params {
        write!(out, " :{k} {v}").expect("string write");
    }
    out.push(')');
}

pub fn print_class(c: &SentenceClass) -> String {
    match (c.shape, c.level) {
        (_, 0) => "qf".into(),
        (Shape::Sigma, n) => format!("(sigma {n})"),
        (Shape::Pi, n) => format!("(pi {n})"),
        (Shape::Delta, n) => format!("(delta {n})"),
    }
}

pub fn print_spec(s: &SpecText) -> Result<String> {
    Ok(format!(
        "(spec :level {} :union {} :inter {} :fragment ({}) :class {} :fuel {})",
        s.pair.level,
        print_code(&s.pair.union_form)?,
        print_code(&s.pair.intersection_form)?,
        s.fragment.join(" "),
        print_class(&s.class),
        s.fuel
    ))
}
