// SPDX-License-Identifier: Apache-2.0

//! S-expressions with source positions.

use crate::baire::Nat;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Int(Nat),
    /// A symbol; keywords keep their leading `:`.
    Sym(String),
    List(Vec<SExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SExpr {
    pub node: Node,
    pub line: usize,
    pub col: usize,
}

impl SExpr {
    pub fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.line, self.col, msg))
    }

    pub fn as_sym(&self) -> Option<&str> {
        match &self.node {
            Node::Sym(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Result<Nat> {
        match self.node {
            Node::Int(n) => Ok(n),
            _ => self.err("expected a natural number"),
        }
    }

    pub fn as_list(&self) -> Result<&[SExpr]> {
        match &self.node {
            Node::List(items) => Ok(items),
            _ => self.err("expected a list"),
        }
    }

    /// `(head args…)`: the head symbol and the remaining items.
    pub fn form(&self) -> Result<(&str, &[SExpr])> {
        let items = self.as_list()?;
        match items.first().and_then(SExpr::as_sym) {
            Some(h) => Ok((h, &items[1..])),
            None => self.err("expected a form starting with a symbol"),
        }
    }

    pub fn nats(&self) -> Result<Vec<Nat>> {
        self.as_list()?.iter().map(SExpr::as_int).collect()
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn expr(&mut self) -> Result<SExpr> {
        self.skip_blank();
        let (line, col) = (self.line, self.col);
        match self.chars.peek().copied() {
            None => Err(Error::parse(line, col, "unexpected end of input")),
            Some(')') => Err(Error::parse(line, col, "unbalanced `)`")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.peek() {
                        None => return Err(Error::parse(line, col, "unclosed `(`")),
                        Some(')') => {
                            self.bump();
                            break;
                        }
                        Some(_) => items.push(self.expr()?),
                    }
                }
                Ok(SExpr {
                    node: Node::List(items),
                    line,
                    col,
                })
            }
            Some(_) => {
                let mut tok = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    tok.push(c);
                    self.bump();
                }
                let node = if tok.chars().all(|c| c.is_ascii_digit()) {
                    Node::Int(
                        tok.parse()
                            .map_err(|_| Error::parse(line, col, format!("number `{tok}` out of range")))?,
                    )
                } else {
                    Node::Sym(tok)
                };
                Ok(SExpr { node, line, col })
            }
        }
    }
}

/// Parses exactly one expression.
pub fn parse_sexpr(text: &str) -> Result<SExpr> {
    let mut lx = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    };
    let e = lx.expr()?;
    lx.skip_blank();
    if lx.chars.peek().is_some() {
        return Err(Error::parse(lx.line, lx.col, "trailing input after expression"));
    }
    Ok(e)
}

/// Splits `args` into positional items and `:key value` pairs.
pub struct Args<'a> {
    pub positional: Vec<&'a SExpr>,
    keys: Vec<(&'a str, &'a SExpr)>,
    at: &'a SExpr,
}

impl<'a> Args<'a> {
    pub fn split(at: &'a SExpr, args: &'a [SExpr]) -> Result<Self> {
        let mut positional = Vec::new();
        let mut keys = Vec::new();
        let mut it = args.iter();
        while let Some(a) = it.next() {
            match a.as_sym() {
                Some(k) if k.starts_with(':') && k.len() > 1 => match it.next() {
                    Some(v) => keys.push((&k[1..], v)),
                    None => return a.err(format!("keyword `{k}` needs a value")),
                },
                _ => positional.push(a),
            }
        }
        Ok(Args { positional, keys, at })
    }

    pub fn get(&self, key: &str) -> Option<&'a SExpr> {
        self.keys.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }

    pub fn need(&self, key: &str) -> Result<&'a SExpr> {
        match self.get(key) {
            Some(v) => Ok(v),
            None => self.at.err(format!("missing `:{key}`")),
        }
    }

    pub fn nat(&self, key: &str) -> Result<Option<Nat>> {
        self.get(key).map(SExpr::as_int).transpose()
    }

    /// Rejects keywords outside `allowed` and a positional count other
    /// than `n`.
    pub fn check(&self, allowed: &[&str], n: usize) -> Result<()> {
        for (k, v) in &self.keys {
            if !allowed.contains(k) {
                return v.err(format!("unexpected keyword `:{k}`"));
            }
        }
        if self.positional.len() != n {
            return self.at.err(format!("expected {n} positional arguments, got {}", self.positional.len()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_tracked() {
        let e = parse_sexpr("(a\n  (b 12) :k)").unwrap();
        let items = e.as_list().unwrap();
        assert_eq!((items[1].line, items[1].col), (2, 3));
        assert_eq!(items[1].as_list().unwrap()[1].node, Node::Int(12));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_sexpr("(a (b)"), Err(Error::parse(1, 1, "unclosed `(`")));
        assert!(matches!(parse_sexpr("(a) b"), Err(Error::Parse { line: 1, col: 5, .. })));
        assert!(matches!(parse_sexpr(")"), Err(Error::Parse { .. })));
    }

    #[test]
    fn comments_are_skipped() {
        let e = parse_sexpr("; head\n(x ; inner\n 1)").unwrap();
        assert_eq!(e.as_list().unwrap().len(), 2);
    }
}
