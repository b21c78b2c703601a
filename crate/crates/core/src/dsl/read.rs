// SPDX-License-Identifier: Apache-2.0

//! Readers from s-expressions to points, sentences, codes and specs.

use super::sexpr::{parse_sexpr, Args, Node, SExpr};
use crate::baire::{Point, Prefix};
use crate::borel::{BorelCode, CatalogSet, DeltaPrimePair, Family, Template};
use crate::error::{Error, Result};
use crate::guessing::SynthesisSpec;
use crate::logic::{Enumeration, Formula, Sentence, SentenceClass, Signature, Term};

/// Any top-level DSL artifact.
#[derive(Clone, Debug, PartialEq)]
pub enum Artifact {
    Point(Point),
    Sentence(Sentence),
    Code(BorelCode),
    Catalog(CatalogSet),
    Spec(SpecText),
}

/// A synthesis spec as written: the Δ′ pair, the odd-position
/// enumeration, and evaluator fuel.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecText {
    pub pair: DeltaPrimePair,
    pub fragment: Vec<String>,
    pub class: SentenceClass,
    pub fuel: usize,
}

impl SpecText {
    pub fn resolve(&self, sig: &Signature) -> Result<SynthesisSpec> {
        let fragment = sig.fragment(self.fragment.iter().map(String::as_str))?;
        Ok(SynthesisSpec {
            pair: self.pair.clone(),
            enumeration: Enumeration {
                fragment,
                class: self.class,
                certified: Vec::new(),
            },
            fuel: self.fuel,
        })
    }
}

/// Reader state: an optional signature for symbol and arity checks.
#[derive(Clone, Copy, Default)]
pub struct Reader<'a> {
    pub sig: Option<&'a Signature>,
}

fn unknown(e: &SExpr, what: &str, name: &str) -> Error {
    Error::parse(e.line, e.col, format!("unknown {what} `{name}`"))
}

impl<'a> Reader<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        Reader { sig: Some(sig) }
    }

    fn arity(&self, e: &SExpr, kind: &str, name: &str, got: usize) -> Result<()> {
        let Some(sig) = self.sig else { return Ok(()) };
        let expected = match kind {
            ":fun" => sig.function(name).map(|s| s.arity),
            ":pred" => sig.predicate(name).map(|s| s.arity),
            _ => sig.functional(name).map(|s| s.params + 1),
        }
        .map_err(|_| unknown(e, "symbol", name))?;
        if expected != got {
            return e.err(format!("`{name}` expects {expected} arguments, got {got}"));
        }
        Ok(())
    }

    fn named(&self, e: &SExpr, kind: &str, args: &[SExpr]) -> Result<(String, Vec<Term>)> {
        let Some(name) = args.first().and_then(SExpr::as_sym) else {
            return e.err(format!("`{kind}` needs a symbol name"));
        };
        let terms = args[1..].iter().map(|a| self.term(a)).collect::<Result<Vec<_>>>()?;
        self.arity(e, kind, name, terms.len())?;
        Ok((name.to_string(), terms))
    }

    pub fn term(&self, e: &SExpr) -> Result<Term> {
        match &e.node {
            Node::Int(n) => Ok(Term::Const(*n)),
            Node::Sym(s) if s.starts_with(':') => e.err(format!("unexpected keyword `{s}` in a term")),
            Node::Sym(s) => Ok(Term::Var(s.clone())),
            Node::List(_) => {
                let (head, args) = e.form()?;
                match head {
                    "f" => match args {
                        [a] => Ok(Term::F(Box::new(self.term(a)?))),
                        _ => e.err(format!("`f` expects 1 argument, got {}", args.len())),
                    },
                    ":fun" => self.named(e, head, args).map(|(n, ts)| Term::Fun(n, ts)),
                    ":pfun" => self.named(e, head, args).map(|(n, ts)| Term::PFun(n, ts)),
                    other => Err(unknown(e, "term form", other)),
                }
            }
        }
    }

    pub fn formula(&self, e: &SExpr) -> Result<Formula> {
        match &e.node {
            Node::Sym(s) if s == "true" => Ok(Formula::True),
            Node::Sym(s) if s == "false" => Ok(Formula::False),
            Node::List(_) => {
                let (head, args) = e.form()?;
                let fs = |args: &[SExpr]| args.iter().map(|a| self.formula(a)).collect::<Result<Vec<_>>>();
                match (head, args) {
                    ("=", [a, b]) => Ok(Formula::Eq(self.term(a)?, self.term(b)?)),
                    (":pred", _) => self.named(e, head, args).map(|(n, ts)| Formula::Pred(n, ts)),
                    ("not", [p]) => Ok(Formula::Not(Box::new(self.formula(p)?))),
                    ("and", _) => Ok(Formula::And(fs(args)?)),
                    ("or", _) => Ok(Formula::Or(fs(args)?)),
                    ("exists" | "forall", [v, p]) => {
                        let Some(var) = v.as_sym().filter(|s| !s.starts_with(':')) else {
                            return v.err("expected a variable name");
                        };
                        let body = Box::new(self.formula(p)?);
                        Ok(if head == "exists" {
                            Formula::Exists(var.to_string(), body)
                        } else {
                            Formula::Forall(var.to_string(), body)
                        })
                    }
                    ("=" | "not" | "exists" | "forall", _) => e.err(format!("wrong number of arguments to `{head}`")),
                    (other, _) => Err(unknown(e, "formula form", other)),
                }
            }
            _ => e.err("expected a formula"),
        }
    }

    fn closed(&self, e: &SExpr, f: Formula) -> Result<Formula> {
        match f.free_vars().into_iter().next() {
            Some(v) => e.err(format!("free variable `{v}` in a sentence")),
            None => Ok(f),
        }
    }

    pub fn sentence(&self, e: &SExpr) -> Result<Sentence> {
        if let Ok(("delta", args)) = e.form() {
            return match args {
                [s, p] => Ok(Sentence::Certified {
                    sigma: self.closed(s, self.formula(s)?)?,
                    pi: self.closed(p, self.formula(p)?)?,
                }),
                _ => e.err("`delta` takes a Σ form and a Π form"),
            };
        }
        Ok(Sentence::Plain(self.closed(e, self.formula(e)?)?))
    }

    pub fn point(&self, e: &SExpr) -> Result<Point> {
        let (head, args) = e.form()?;
        if head != "point" {
            return e.err("expected `(point :pre (…) :per (…))`");
        }
        let a = Args::split(e, args)?;
        a.check(&["pre", "per"], 0)?;
        let pre = a.get("pre").map(SExpr::nats).transpose()?.unwrap_or_default();
        let per = a.need("per")?;
        Point::new(pre, per.nats()?).map_err(|err| Error::parse(per.line, per.col, err.to_string()))
    }

    pub fn catalog(&self, e: &SExpr) -> Result<CatalogSet> {
        let (_, args) = e.form()?;
        let a = Args::split(e, args)?;
        a.check(&["k", "c", "s"], 1)?;
        let name = a.positional[0].as_sym().ok_or_else(|| unknown(e, "catalog set", "?"))?;
        let num = match (a.nat("k")?, a.nat("c")?) {
            (Some(k), _) => Some(k),
            (None, c) => c,
        };
        let s = a.get("s").map(|s| s.nats().map(Prefix::new)).transpose()?;
        CatalogSet::from_name(name, num, s).map_err(|err| Error::parse(e.line, e.col, err.to_string()))
    }

    pub fn code(&self, e: &SExpr) -> Result<BorelCode> {
        let (head, args) = e.form()?;
        let codes = |args: &[SExpr]| args.iter().map(|a| self.code(a)).collect::<Result<Vec<_>>>();
        match (head, args) {
            ("cyl", [s]) => Ok(BorelCode::Cylinder(Prefix::new(s.nats()?))),
            ("co-cyl", [s]) => Ok(BorelCode::CoCylinder(Prefix::new(s.nats()?))),
            ("union", _) => Ok(BorelCode::Union(codes(args)?)),
            ("inter", _) => Ok(BorelCode::Intersection(codes(args)?)),
            ("iunion", [f]) => Ok(BorelCode::IndexedUnion(self.family(f)?)),
            ("iinter", [f]) => Ok(BorelCode::IndexedIntersection(self.family(f)?)),
            ("leaf", [s]) => Ok(BorelCode::Leaf(self.sentence(s)?)),
            ("catalog", _) => Ok(crate::borel::catalog::code(&self.catalog(e)?)),
            ("cyl" | "co-cyl" | "iunion" | "iinter" | "leaf", _) => {
                e.err(format!("`{head}` takes exactly one argument"))
            }
            (other, _) => Err(unknown(e, "code form", other)),
        }
    }

    fn pi_flag(&self, e: &SExpr, a: &Args<'_>, key: &str, yes: &str, no: &str) -> Result<bool> {
        match a.need(key)?.as_sym() {
            Some(s) if s == yes => Ok(true),
            Some(s) if s == no => Ok(false),
            _ => e.err(format!("`:{key}` is `{yes}` or `{no}`")),
        }
    }

    pub fn family(&self, e: &SExpr) -> Result<Family> {
        let (head, args) = e.form()?;
        let a = Args::split(e, args)?;
        let inner = |a: &Args<'_>| -> Result<Box<Family>> { Ok(Box::new(self.family(a.positional[0])?)) };
        match head {
            "explicit" => {
                a.check(&["tail"], 1)?;
                let items = a.positional[0].as_list()?.iter().map(|c| self.code(c)).collect::<Result<_>>()?;
                Ok(Family::Explicit {
                    items,
                    tail: Box::new(self.code(a.need("tail")?)?),
                })
            }
            "const" => {
                a.check(&[], 1)?;
                Ok(Family::constant(self.code(a.positional[0])?))
            }
            "template" => self.template(e, &a).map(Family::Template),
            "subst" => {
                a.check(&[], 2)?;
                let Some(var) = a.positional[0].as_sym() else {
                    return a.positional[0].err("expected a variable name");
                };
                let body = self.formula(a.positional[1])?;
                if let Some(v) = body.free_vars().into_iter().find(|v| v != var) {
                    return a.positional[1].err(format!("free variable `{v}` in a substitution body"));
                }
                Ok(Family::Substitution {
                    var: var.to_string(),
                    body,
                })
            }
            "complement" => {
                a.check(&[], 1)?;
                Ok(Family::Complement(inner(&a)?))
            }
            "flatten" => {
                a.check(&[], 1)?;
                Ok(Family::Flatten(inner(&a)?))
            }
            "lift" => {
                a.check(&["rows"], 1)?;
                Ok(Family::Lift {
                    inner: inner(&a)?,
                    rows_are_intersections: self.pi_flag(e, &a, "rows", "inter", "union")?,
                })
            }
            "normalize" => {
                a.check(&["to"], 1)?;
                Ok(Family::Normalize {
                    inner: inner(&a)?,
                    to_pi: self.pi_flag(e, &a, "to", "pi", "sigma")?,
                })
            }
            "collapse" => {
                a.check(&["to"], 1)?;
                Ok(Family::Collapse {
                    outer: inner(&a)?,
                    to_pi: self.pi_flag(e, &a, "to", "pi", "sigma")?,
                })
            }
            other => Err(unknown(e, "family form", other)),
        }
    }

    fn template(&self, e: &SExpr, a: &Args<'_>) -> Result<Template> {
        if a.positional.len() != 1 {
            return e.err("`template` takes a name and keyword parameters");
        }
        let name = a.positional[0].as_sym().unwrap_or("");
        let k = || a.need("k").and_then(SExpr::as_int);
        let n = || a.need("n").and_then(SExpr::as_int);
        let (t, keys): (Template, &[&str]) = match name {
            "first-repeat" => (Template::FirstRepeat, &[]),
            "avoid-cylinder" => (Template::AvoidCylinder(Prefix::new(a.need("s")?.nats()?)), &["s"]),
            "repeat-rows" => (Template::RepeatRows, &[]),
            "zeros-exact-row" => (Template::ZerosExactRow { k: k()?, n: n()? }, &["k", "n"]),
            "zeros-exact-rows" => (Template::ZerosExactRows { k: k()? }, &["k"]),
            "zeros-at-least" => (Template::ZerosAtLeast { k: k()? }, &["k"]),
            "zeros-exact-cover" => (Template::ZerosExactCover { k: k()? }, &["k"]),
            "zeros-at-most" => (Template::ZerosAtMost { k: k()? }, &["k"]),
            "zeros-at-most-rows" => (Template::ZerosAtMostRows { k: k()? }, &["k"]),
            "zero-from" => (Template::ZeroFrom { n: n()? }, &["n"]),
            "zero-from-rows" => (Template::ZeroFromRows, &[]),
            "zero-after-rows" => (Template::ZeroAfterRows, &[]),
            "const-from" => (Template::ConstFrom { n: n()? }, &["n"]),
            "const-from-rows" => (Template::ConstFromRows, &[]),
            "avoid-nonzero-after" => (Template::AvoidNonzeroAfter { n: n()? }, &["n"]),
            "avoid-nonzero-rows" => (Template::AvoidNonzeroRows, &[]),
            other => return Err(unknown(a.positional[0], "template", other)),
        };
        a.check(keys, 1)?;
        Ok(t)
    }

    pub fn class(&self, e: &SExpr) -> Result<SentenceClass> {
        if e.as_sym() == Some("qf") {
            return Ok(SentenceClass::QUANTIFIER_FREE);
        }
        match e.form()? {
            ("sigma", [n]) => Ok(SentenceClass::sigma(n.as_int()? as usize)),
            ("pi", [n]) => Ok(SentenceClass::pi(n.as_int()? as usize)),
            ("delta", [n]) => Ok(SentenceClass::delta(n.as_int()? as usize)),
            _ => e.err("expected `qf`, `(sigma n)`, `(pi n)` or `(delta n)`"),
        }
    }

    pub fn spec(&self, e: &SExpr) -> Result<SpecText> {
        let (head, args) = e.form()?;
        if head != "spec" {
            return e.err("expected `(spec …)`");
        }
        let a = Args::split(e, args)?;
        a.check(&["level", "union", "inter", "fragment", "class", "fuel"], 0)?;
        let level = a.need("level")?.as_int()? as usize;
        let fragment = match a.get("fragment") {
            Some(f) => f
                .as_list()?
                .iter()
                .map(|s| s.as_sym().map(str::to_string).ok_or(()).or_else(|_| s.err("expected a symbol name")))
                .collect::<Result<_>>()?,
            None => Vec::new(),
        };
        Ok(SpecText {
            pair: DeltaPrimePair {
                union_form: self.code(a.need("union")?)?,
                intersection_form: self.code(a.need("inter")?)?,
                level,
            },
            fragment,
            class: a.get("class").map(|c| self.class(c)).transpose()?.unwrap_or(SentenceClass::QUANTIFIER_FREE),
            fuel: a.nat("fuel")?.unwrap_or(1000) as usize,
        })
    }

    /// Dispatches on the head form.
    pub fn artifact(&self, e: &SExpr) -> Result<Artifact> {
        match e.form().map(|(h, _)| h) {
            Ok("point") => self.point(e).map(Artifact::Point),
            Ok("catalog") => self.catalog(e).map(Artifact::Catalog),
            Ok("spec") => self.spec(e).map(Artifact::Spec),
            Ok("cyl" | "co-cyl" | "union" | "inter" | "iunion" | "iinter" | "leaf") => {
                self.code(e).map(Artifact::Code)
            }
            _ => self.sentence(e).map(Artifact::Sentence),
        }
    }
}

pub fn parse(text: &str) -> Result<Artifact> {
    Reader::default().artifact(&parse_sexpr(text)?)
}

pub fn parse_point(text: &str) -> Result<Point> {
    Reader::default().point(&parse_sexpr(text)?)
}

/// Parses a sentence, checking symbols against `sig`.
pub fn parse_sentence(sig: &Signature, text: &str) -> Result<Sentence> {
    Reader::new(sig).sentence(&parse_sexpr(text)?)
}

pub fn parse_code(sig: &Signature, text: &str) -> Result<BorelCode> {
    Reader::new(sig).code(&parse_sexpr(text)?)
}

pub fn parse_catalog(text: &str) -> Result<CatalogSet> {
    Reader::default().catalog(&parse_sexpr(text)?)
}

pub fn parse_spec(sig: &Signature, text: &str) -> Result<SpecText> {
    Reader::new(sig).spec(&parse_sexpr(text)?)
}
