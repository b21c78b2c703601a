// SPDX-License-Identifier: Apache-2.0

//! Codes in Σₙ/Πₙ normal form to sentences, via generated prefix symbols.

use std::sync::Arc;

use super::code::BorelCode;
use crate::baire::{Nat, Prefix};
use crate::error::{Error, Result};
use crate::logic::{Formula, Sentence, Signature, Term};

/// Deepest normal form the compiler accepts.
pub const MAX_COMPILE_LEVEL: usize = 3;

/// A compiled sentence and the names of the symbols registered for it.
#[derive(Clone, Debug, PartialEq)]
pub struct Compiled {
    pub sentence: Sentence,
    pub tau: String,
    pub ell: String,
}

/// Kinds of the nested index levels, outermost first: `true` for unions.
fn shape(c: &BorelCode) -> Result<Vec<bool>> {
    let mut kinds = Vec::new();
    let mut cur = c.clone();
    loop {
        match &cur {
            BorelCode::IndexedUnion(f) | BorelCode::IndexedIntersection(f) => {
                let union = matches!(cur, BorelCode::IndexedUnion(_));
                if kinds.last() == Some(&union) {
                    return Err(Error::Shape("index levels must alternate".into()));
                }
                kinds.push(union);
                cur = f.child(0);
            }
            BorelCode::Cylinder(_) if kinds.last() == Some(&true) => return Ok(kinds),
            BorelCode::CoCylinder(_) if kinds.last() == Some(&false) => return Ok(kinds),
            other => {
                return Err(Error::Shape(format!(
                    "normal form needs cylinders under unions and co-cylinders under intersections, found {other:?}"
                )))
            }
        }
    }
}

/// `f_x̄`: the basic set at index path `xs`.
fn basic_at(c: &BorelCode, xs: &[Nat]) -> Option<Prefix> {
    let mut cur = c.clone();
    for &x in xs {
        cur = cur.child(x)?;
    }
    match cur {
        BorelCode::Cylinder(s) | BorelCode::CoCylinder(s) => Some(s),
        _ => None,
    }
}

/// Visits index paths with every coordinate below `width`.
fn sample_paths(depth: usize, width: Nat, visit: &mut dyn FnMut(&[Nat]) -> Result<()>) -> Result<()> {
    let mut xs = vec![0; depth];
    loop {
        visit(&xs)?;
        let mut pos = depth;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            xs[pos] += 1;
            if xs[pos] < width {
                break;
            }
            xs[pos] = 0;
        }
    }
}

/// `Q₁x₁ … Qₙxₙ (τ∘f)(x̄, ℓ(x̄)) = b`, with `τ(x̄, f(0..=m))` = 1 iff `f_x̄` is
/// an initial segment of `f(0..=m)`, `ℓ(x̄) = |f_x̄| − 1`, and `b` = 1 under an
/// innermost union, 0 under an innermost intersection. Quantifiers follow
/// the index levels: `∃` for unions, `∀` for intersections.
pub fn compile_to_sentence(sig: &mut Signature, c: &BorelCode) -> Result<Compiled> {
    let kinds = shape(c)?;
    let n = kinds.len();
    if n > MAX_COMPILE_LEVEL {
        return Err(Error::LevelTooDeep(n));
    }
    let width = match n {
        1 | 2 => 32,
        _ => 16,
    };
    sample_paths(n, width, &mut |xs| match basic_at(c, xs) {
        Some(s) if !s.is_empty() => Ok(()),
        Some(_) => Err(Error::EmptyPrefix),
        None => Err(Error::Shape(format!("no basic set at index path {xs:?}"))),
    })?;

    let tau = sig.fresh_name("tau");
    let ell = sig.fresh_name("ell");
    let code = Arc::new(c.clone());
    let for_tau = Arc::clone(&code);
    sig.register_functional(
        &tau,
        n,
        Arc::new(move |xs, vals| {
            let hit = basic_at(&for_tau, xs).is_some_and(|s| s.is_initial_segment_of(&Prefix::from(vals)));
            Nat::from(hit)
        }),
    )?;
    sig.register_function(
        &ell,
        n,
        Arc::new(move |xs| basic_at(&code, xs).map_or(0, |s| s.len().saturating_sub(1) as Nat)),
    )?;

    let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let args: Vec<Term> = vars.iter().map(|v| Term::var(v)).collect();
    let mut tau_args = args.clone();
    tau_args.push(Term::Fun(ell.clone(), args));
    let target = Nat::from(kinds[n - 1]);
    let matrix = Formula::eq(Term::PFun(tau.clone(), tau_args), Term::Const(target));
    let phi = vars
        .iter()
        .zip(&kinds)
        .rev()
        .fold(matrix, |body, (v, &union)| {
            if union {
                Formula::exists(v, body)
            } else {
                Formula::forall(v, body)
            }
        });
    Ok(Compiled {
        sentence: Sentence::Plain(phi),
        tau,
        ell,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baire::Point;
    use crate::borel::{Family, Template};
    use crate::logic::{classify, evaluate, SentenceClass, Truth};

    fn pt(pre: &[Nat], per: &[Nat]) -> Point {
        Point::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    #[test]
    fn open_set_compiles_to_sigma_one() {
        let mut sig = Signature::standard();
        let open = BorelCode::IndexedUnion(Family::Template(Template::FirstRepeat));
        let out = compile_to_sentence(&mut sig, &open).unwrap();
        let phi = out.sentence.primary().clone();
        assert_eq!(classify(&phi), SentenceClass::sigma(1));
        assert_eq!(evaluate(&sig, &phi, &pt(&[], &[4]), 10).unwrap(), Truth::True);
    }

    #[test]
    fn closed_complement_compiles_to_pi_one() {
        let mut sig = Signature::standard();
        let closed = BorelCode::IndexedUnion(Family::Template(Template::FirstRepeat)).complement();
        let out = compile_to_sentence(&mut sig, &closed).unwrap();
        let phi = out.sentence.primary().clone();
        assert_eq!(classify(&phi), SentenceClass::pi(1));
        assert_eq!(evaluate(&sig, &phi, &pt(&[], &[4]), 10).unwrap(), Truth::False);
    }

    #[test]
    fn rejections() {
        let mut sig = Signature::standard();
        let empty = BorelCode::IndexedUnion(Family::constant(BorelCode::Cylinder(Prefix::empty())));
        assert_eq!(compile_to_sentence(&mut sig, &empty), Err(Error::EmptyPrefix));
        let mut deep = BorelCode::cylinder(&[1]);
        for level in 0..4 {
            deep = if level % 2 == 0 {
                BorelCode::IndexedUnion(Family::constant(deep))
            } else {
                BorelCode::IndexedIntersection(Family::constant(deep))
            };
        }
        // innermost union over a cylinder, four levels
        assert_eq!(compile_to_sentence(&mut sig, &deep), Err(Error::LevelTooDeep(4)));
    }

    #[test]
    fn fresh_symbols_each_time() {
        let mut sig = Signature::standard();
        let open = BorelCode::IndexedUnion(Family::Template(Template::FirstRepeat));
        let a = compile_to_sentence(&mut sig, &open).unwrap();
        let b = compile_to_sentence(&mut sig, &open).unwrap();
        assert_ne!(a.tau, b.tau);
        assert!(sig.has_functional(&a.tau) && sig.has_function(&b.ell));
    }
}
