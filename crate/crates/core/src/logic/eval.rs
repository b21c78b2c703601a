// SPDX-License-Identifier: Apache-2.0

//! Truth in M_f, determination by prefixes, and truth bits.

use serde::{Deserialize, Serialize};

use super::signature::Signature;
use super::syntax::{Formula, Sentence, Term};
use crate::baire::{Nat, Point, Prefix};
use crate::error::{Error, Result};

/// Largest prefix-functional argument we are willing to materialize.
const MAX_PREFIX_READ: Nat = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn decided(self) -> Option<bool> {
        match self {
            Truth::True => Some(true),
            Truth::False => Some(false),
            Truth::Unknown => None,
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        self.negate().and(other.negate()).negate()
    }
}

/// Read access to `f`; `None` means the index is not available.
trait Access {
    fn read(&mut self, i: Nat) -> Option<Nat>;
    fn read_through(&mut self, m: Nat) -> Option<Vec<Nat>>;
}

struct PointAccess<'a> {
    point: &'a Point,
    max_read: Option<Nat>,
}

impl Access for PointAccess<'_> {
    fn read(&mut self, i: Nat) -> Option<Nat> {
        self.max_read = Some(self.max_read.map_or(i, |m| m.max(i)));
        Some(self.point.at(i as usize))
    }

    fn read_through(&mut self, m: Nat) -> Option<Vec<Nat>> {
        if m > MAX_PREFIX_READ {
            return None;
        }
        self.max_read = Some(self.max_read.map_or(m, |x| x.max(m)));
        Some((0..=m as usize).map(|i| self.point.at(i)).collect())
    }
}

struct PrefixAccess<'a> {
    prefix: &'a Prefix,
}

impl Access for PrefixAccess<'_> {
    fn read(&mut self, i: Nat) -> Option<Nat> {
        self.prefix.get(usize::try_from(i).ok()?)
    }

    fn read_through(&mut self, m: Nat) -> Option<Vec<Nat>> {
        let m = usize::try_from(m).ok()?;
        (m < self.prefix.len()).then(|| self.prefix.items()[..=m].to_vec())
    }
}

type Env = Vec<(String, Nat)>;

fn lookup(env: &Env, v: &str) -> Result<Nat> {
    env.iter()
        .rev()
        .find(|(n, _)| n == v)
        .map(|&(_, x)| x)
        .ok_or_else(|| Error::FreeVariable(v.to_string()))
}

/// `Ok(None)` when a needed read of `f` is unavailable.
fn eval_term(sig: &Signature, t: &Term, env: &Env, acc: &mut dyn Access) -> Result<Option<Nat>> {
    let eval_args = |args: &[Term], acc: &mut dyn Access| -> Result<Option<Vec<Nat>>> {
        let mut out = Vec::with_capacity(args.len());
        let mut missing = false;
        for a in args {
            match eval_term(sig, a, env, acc)? {
                Some(v) => out.push(v),
                None => missing = true,
            }
        }
        Ok((!missing).then_some(out))
    };
    Ok(match t {
        Term::Const(n) => Some(*n),
        Term::Var(v) => Some(lookup(env, v)?),
        Term::F(inner) => match eval_term(sig, inner, env, acc)? {
            Some(i) => acc.read(i),
            None => None,
        },
        Term::Fun(name, args) => {
            let sym = sig.function(name)?;
            check_arity(name, sym.arity, args.len())?;
            eval_args(args, acc)?.map(|vals| (sym.imp)(&vals))
        }
        Term::PFun(name, args) => {
            let sym = sig.functional(name)?;
            check_arity(name, sym.params + 1, args.len())?;
            match eval_args(args, acc)? {
                Some(vals) => {
                    let (params, last) = vals.split_at(sym.params);
                    acc.read_through(last[0]).map(|s| (sym.imp)(params, &s))
                }
                None => None,
            }
        }
    })
}

fn check_arity(name: &str, expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::Arity {
            name: name.to_string(),
            expected,
            got,
        });
    }
    Ok(())
}

/// Quantifier-free evaluation. Every subformula is evaluated (no
/// short-circuiting) so that the recorded read set is the full one.
fn eval_qf(sig: &Signature, phi: &Formula, env: &Env, acc: &mut dyn Access) -> Result<Option<bool>> {
    Ok(match phi {
        Formula::True => Some(true),
        Formula::False => Some(false),
        Formula::Eq(a, b) => {
            let x = eval_term(sig, a, env, acc)?;
            let y = eval_term(sig, b, env, acc)?;
            x.zip(y).map(|(x, y)| x == y)
        }
        Formula::Pred(name, args) => {
            let sym = sig.predicate(name)?;
            check_arity(name, sym.arity, args.len())?;
            let mut vals = Vec::new();
            let mut missing = false;
            for a in args {
                match eval_term(sig, a, env, acc)? {
                    Some(v) => vals.push(v),
                    None => missing = true,
                }
            }
            (!missing).then(|| (sym.imp)(&vals))
        }
        Formula::Not(p) => eval_qf(sig, p, env, acc)?.map(|b| !b),
        Formula::And(ps) => {
            let mut all = Some(true);
            for p in ps {
                let v = eval_qf(sig, p, env, acc)?;
                all = all.zip(v).map(|(a, b)| a && b);
            }
            all
        }
        Formula::Or(ps) => {
            let mut any = Some(false);
            for p in ps {
                let v = eval_qf(sig, p, env, acc)?;
                any = any.zip(v).map(|(a, b)| a || b);
            }
            any
        }
        Formula::Exists(..) | Formula::Forall(..) => return Err(Error::NotQuantifierFree),
    })
}

fn atom_side_ok(t: &Term) -> bool {
    t.is_closed()
        || matches!(t, Term::Var(_))
        || matches!(t, Term::F(inner) if matches!(**inner, Term::Var(_)))
}

/// How a bound variable is used inside its scope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Unused,
    /// Only ever as `f(v)`.
    Index,
    /// Only ever bare, as a side of an equation.
    Value,
    Mixed,
}

impl Role {
    fn join(self, other: Role) -> Role {
        match (self, other) {
            (Role::Unused, r) | (r, Role::Unused) => r,
            (a, b) if a == b => a,
            _ => Role::Mixed,
        }
    }
}

fn term_role(t: &Term, v: &str) -> Role {
    match t {
        Term::Var(x) if x == v => Role::Value,
        Term::F(inner) if matches!(&**inner, Term::Var(x) if x == v) => Role::Index,
        _ => {
            let mut vars = std::collections::BTreeSet::new();
            t.collect_vars(&mut vars);
            if vars.contains(v) {
                Role::Mixed
            } else {
                Role::Unused
            }
        }
    }
}

fn var_role(phi: &Formula, v: &str) -> Role {
    match phi {
        Formula::True | Formula::False => Role::Unused,
        Formula::Eq(a, b) => term_role(a, v).join(term_role(b, v)),
        Formula::Pred(_, args) => args
            .iter()
            .map(|a| match term_role(a, v) {
                Role::Unused => Role::Unused,
                _ => Role::Mixed,
            })
            .fold(Role::Unused, Role::join),
        Formula::Not(p) => var_role(p, v),
        Formula::And(ps) | Formula::Or(ps) => {
            ps.iter().map(|p| var_role(p, v)).fold(Role::Unused, Role::join)
        }
        Formula::Exists(x, p) | Formula::Forall(x, p) => {
            if x == v {
                Role::Unused
            } else {
                var_role(p, v)
            }
        }
    }
}

/// The exactly decidable fragment: atoms are equations between `f(v)`,
/// bare variables, and closed terms; predicates take closed arguments; and
/// each quantified variable is used either only under `f` or only bare.
pub fn in_periodic_fragment(phi: &Formula) -> bool {
    match phi {
        Formula::True | Formula::False => true,
        Formula::Eq(a, b) => atom_side_ok(a) && atom_side_ok(b),
        Formula::Pred(_, args) => args.iter().all(Term::is_closed),
        Formula::Not(p) => in_periodic_fragment(p),
        Formula::Exists(v, p) | Formula::Forall(v, p) => {
            var_role(p, v) != Role::Mixed && in_periodic_fragment(p)
        }
        Formula::And(ps) | Formula::Or(ps) => ps.iter().all(in_periodic_fragment),
    }
}

/// Values of equation sides that do not depend on variables bound inside
/// `phi` (closed terms and variables already fixed by `env`).
fn fixed_side_values(
    sig: &Signature,
    phi: &Formula,
    bound: &mut Vec<String>,
    env: &Env,
    point: &Point,
    out: &mut Vec<Nat>,
) -> Result<()> {
    match phi {
        Formula::Eq(a, b) => {
            for t in [a, b] {
                let mut vars = std::collections::BTreeSet::new();
                t.collect_vars(&mut vars);
                if vars.iter().all(|v| !bound.contains(v)) {
                    let mut acc = PointAccess {
                        point,
                        max_read: None,
                    };
                    if let Some(x) = eval_term(sig, t, env, &mut acc)? {
                        out.push(x);
                    }
                }
            }
        }
        Formula::Not(p) => fixed_side_values(sig, p, bound, env, point, out)?,
        Formula::And(ps) | Formula::Or(ps) => {
            for p in ps {
                fixed_side_values(sig, p, bound, env, point, out)?;
            }
        }
        Formula::Exists(v, p) | Formula::Forall(v, p) => {
            bound.push(v.clone());
            fixed_side_values(sig, p, bound, env, point, out)?;
            bound.pop();
        }
        Formula::True | Formula::False | Formula::Pred(..) => {}
    }
    Ok(())
}

/// Number of bare-valued variables bound inside `phi`.
fn value_binders(phi: &Formula) -> usize {
    match phi {
        Formula::Not(p) => value_binders(p),
        Formula::And(ps) | Formula::Or(ps) => ps.iter().map(value_binders).sum(),
        Formula::Exists(v, p) | Formula::Forall(v, p) => {
            usize::from(var_role(p, v) == Role::Value) + value_binders(p)
        }
        _ => 0,
    }
}

struct Evaluator<'a> {
    sig: &'a Signature,
    point: &'a Point,
    fuel: usize,
}

impl Evaluator<'_> {
    /// A finite set of values for `v` that is exhaustive for `phi`, when
    /// `phi` lies in the periodic fragment. Atoms only observe which
    /// f-values, fixed values, and other bare variables a variable equals,
    /// so one index per f-value, and for bare variables every relevant value
    /// plus enough fresh ones, suffice.
    fn representatives(
        &self,
        phi: &Formula,
        body: &Formula,
        v: &str,
        env: &Env,
    ) -> Result<Option<Vec<Nat>>> {
        if !in_periodic_fragment(phi) {
            return Ok(None);
        }
        Ok(Some(match var_role(body, v) {
            Role::Unused => vec![0],
            Role::Index => (0..self.point.horizon() as Nat).collect(),
            Role::Value => {
                let mut vals: Vec<Nat> = self.point.preamble().to_vec();
                vals.extend_from_slice(self.point.period());
                fixed_side_values(self.sig, phi, &mut Vec::new(), env, self.point, &mut vals)?;
                vals.extend(env.iter().map(|&(_, x)| x));
                let top = vals.iter().copied().max().unwrap_or(0);
                let fresh = value_binders(phi) as Nat;
                vals.extend((1..=fresh).map(|k| top.saturating_add(k)));
                vals.sort_unstable();
                vals.dedup();
                vals
            }
            Role::Mixed => return Ok(None),
        }))
    }

    fn eval(&self, phi: &Formula, env: &mut Env) -> Result<Truth> {
        Ok(match phi {
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let existential = matches!(phi, Formula::Exists(..));
                let (range, exact) = match self.representatives(phi, body, v, env)? {
                    Some(reps) => (reps, true),
                    None => ((0..self.fuel as Nat).collect(), false),
                };
                let mut acc = if existential { Truth::False } else { Truth::True };
                for x in range {
                    env.push((v.clone(), x));
                    let r = self.eval(body, env);
                    env.pop();
                    let r = r?;
                    acc = if existential { acc.or(r) } else { acc.and(r) };
                    if acc != Truth::Unknown && (acc == Truth::True) == existential {
                        return Ok(acc);
                    }
                }
                if exact {
                    acc
                } else {
                    // Unsearched values may still hold a witness / counterexample.
                    Truth::Unknown
                }
            }
            Formula::Not(p) => self.eval(p, env)?.negate(),
            Formula::And(ps) => {
                let mut acc = Truth::True;
                for p in ps {
                    acc = acc.and(self.eval(p, env)?);
                    if acc == Truth::False {
                        break;
                    }
                }
                acc
            }
            Formula::Or(ps) => {
                let mut acc = Truth::False;
                for p in ps {
                    acc = acc.or(self.eval(p, env)?);
                    if acc == Truth::True {
                        break;
                    }
                }
                acc
            }
            atom => {
                let mut acc = PointAccess {
                    point: self.point,
                    max_read: None,
                };
                match eval_qf(self.sig, atom, env, &mut acc)? {
                    Some(b) => Truth::from_bool(b),
                    None => Truth::Unknown,
                }
            }
        })
    }
}

fn ensure_sentence(phi: &Formula) -> Result<()> {
    match phi.free_vars().into_iter().next() {
        Some(v) => Err(Error::FreeVariable(v)),
        None => Ok(()),
    }
}

/// Sound three-valued truth of `phi` in M_p. Quantifiers outside the
/// periodic fragment search witnesses among `0..fuel`.
pub fn evaluate(sig: &Signature, phi: &Formula, p: &Point, fuel: usize) -> Result<Truth> {
    ensure_sentence(phi)?;
    Evaluator {
        sig,
        point: p,
        fuel,
    }
    .eval(phi, &mut Vec::new())
}

/// Truth of a listing sentence: a Δ certificate is decided by whichever of
/// its two forms decides first.
pub fn evaluate_sentence(sig: &Signature, s: &Sentence, p: &Point, fuel: usize) -> Result<Truth> {
    match s {
        Sentence::Plain(f) => evaluate(sig, f, p, fuel),
        Sentence::Certified { sigma, pi } => match evaluate(sig, sigma, p, fuel)? {
            Truth::Unknown => evaluate(sig, pi, p, fuel),
            t => Ok(t),
        },
    }
}

/// f(φ): 1 iff M_p ⊨ φ. Errors with `Undecided` when evaluation is Unknown.
pub fn truth_bit(sig: &Signature, phi: &Formula, p: &Point, fuel: usize) -> Result<bool> {
    evaluate(sig, phi, p, fuel)?
        .decided()
        .ok_or_else(|| Error::Undecided(phi.to_string()))
}

pub fn sentence_bit(sig: &Signature, s: &Sentence, p: &Point, fuel: usize) -> Result<bool> {
    evaluate_sentence(sig, s, p, fuel)?
        .decided()
        .ok_or_else(|| Error::Undecided(s.to_string()))
}

/// Whether the quantifier-free sentence `phi` is determined by `s`: every
/// read of `f` made while evaluating it falls inside `s`. Returns the decided
/// value when it is.
pub fn determined_by(sig: &Signature, phi: &Formula, s: &Prefix) -> Result<Option<bool>> {
    if !phi.is_quantifier_free() {
        return Err(Error::NotQuantifierFree);
    }
    ensure_sentence(phi)?;
    eval_qf(sig, phi, &Vec::new(), &mut PrefixAccess { prefix: s })
}

/// A `k` such that `(f(0), …, f(k))` determines `phi`: the largest index of
/// `f` read while evaluating on `p` (prefix functionals read `0..=m`).
pub fn determination_bound(sig: &Signature, phi: &Formula, p: &Point) -> Result<usize> {
    if !phi.is_quantifier_free() {
        return Err(Error::NotQuantifierFree);
    }
    ensure_sentence(phi)?;
    let mut acc = PointAccess {
        point: p,
        max_read: None,
    };
    eval_qf(sig, phi, &Vec::new(), &mut acc)?
        .ok_or_else(|| Error::Shape("prefix functional argument too large".into()))?;
    Ok(acc.max_read.unwrap_or(0) as usize)
}
