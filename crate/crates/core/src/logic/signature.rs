// SPDX-License-Identifier: Apache-2.0

//! The executable symbol registry.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::baire::{pair, Nat};
use crate::error::{Error, Result};

pub type FunctionImpl = Arc<dyn Fn(&[Nat]) -> Nat + Send + Sync>;
pub type PredicateImpl = Arc<dyn Fn(&[Nat]) -> bool + Send + Sync>;
/// `(parameters, f(0..=m)) ↦ value`.
pub type FunctionalImpl = Arc<dyn Fn(&[Nat], &[Nat]) -> Nat + Send + Sync>;

#[derive(Clone)]
pub struct FunctionSymbol {
    pub arity: usize,
    pub imp: FunctionImpl,
}

#[derive(Clone)]
pub struct PredicateSymbol {
    pub arity: usize,
    pub imp: PredicateImpl,
}

/// A prefix functional `G∘f` with `params` ordinary arguments followed by
/// one prefix-length argument.
#[derive(Clone)]
pub struct FunctionalSymbol {
    pub params: usize,
    pub imp: FunctionalImpl,
}

/// A countable registry of executable symbols. `f` and the numerals are
/// implicit.
#[derive(Clone, Default)]
pub struct Signature {
    functions: BTreeMap<String, FunctionSymbol>,
    predicates: BTreeMap<String, PredicateSymbol>,
    functionals: BTreeMap<String, FunctionalSymbol>,
    fresh: u64,
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Signature")
            .field("functions", &self.functions.keys().collect::<Vec<_>>())
            .field("predicates", &self.predicates.keys().collect::<Vec<_>>())
            .field("functionals", &self.functionals.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl Signature {
    /// Only `f` and the numerals.
    pub fn empty() -> Self {
        Signature::default()
    }

    /// The built-in registry: arithmetic, pairing, order, and a few prefix
    /// functionals.
    pub fn standard() -> Self {
        let mut sig = Signature::empty();
        let fun = |sig: &mut Signature, name: &str, arity: usize, imp: FunctionImpl| {
            sig.register_function(name, arity, imp).expect("builtin names are unique")
        };
        fun(&mut sig, "succ", 1, Arc::new(|a| a[0].saturating_add(1)));
        fun(&mut sig, "pred", 1, Arc::new(|a| a[0].saturating_sub(1)));
        fun(&mut sig, "add", 2, Arc::new(|a| a[0].saturating_add(a[1])));
        fun(&mut sig, "mul", 2, Arc::new(|a| a[0].saturating_mul(a[1])));
        fun(&mut sig, "monus", 2, Arc::new(|a| a[0].saturating_sub(a[1])));
        fun(
            &mut sig,
            "pair",
            2,
            Arc::new(|a| {
                if a[0] > u32::MAX as Nat || a[1] > u32::MAX as Nat {
                    Nat::MAX
                } else {
                    pair(a[0], a[1])
                }
            }),
        );
        fun(&mut sig, "fst", 1, Arc::new(|a| crate::baire::unpair(a[0]).0));
        fun(&mut sig, "snd", 1, Arc::new(|a| crate::baire::unpair(a[0]).1));

        let pred = |sig: &mut Signature, name: &str, arity: usize, imp: PredicateImpl| {
            sig.register_predicate(name, arity, imp).expect("builtin names are unique")
        };
        pred(&mut sig, "le", 2, Arc::new(|a| a[0] <= a[1]));
        pred(&mut sig, "lt", 2, Arc::new(|a| a[0] < a[1]));
        pred(&mut sig, "even", 1, Arc::new(|a| a[0] % 2 == 0));

        let pf = |sig: &mut Signature, name: &str, params: usize, imp: FunctionalImpl| {
            sig.register_functional(name, params, imp).expect("builtin names are unique")
        };
        // number of zeros among f(0..=m)
        pf(
            &mut sig,
            "zeros",
            0,
            Arc::new(|_, s| s.iter().filter(|&&v| v == 0).count() as Nat),
        );
        pf(
            &mut sig,
            "sum",
            0,
            Arc::new(|_, s| s.iter().fold(0, |acc: Nat, &v| acc.saturating_add(v))),
        );
        pf(&mut sig, "max", 0, Arc::new(|_, s| s.iter().copied().max().unwrap_or(0)));
        // number of entries among f(0..=m) equal to the parameter
        pf(
            &mut sig,
            "count",
            1,
            Arc::new(|p, s| s.iter().filter(|&&v| v == p[0]).count() as Nat),
        );
        sig
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        if self.functions.contains_key(name)
            || self.predicates.contains_key(name)
            || self.functionals.contains_key(name)
            || name == "f"
        {
            return Err(Error::DuplicateSymbol(name.to_string()));
        }
        Ok(())
    }

    pub fn register_function(&mut self, name: &str, arity: usize, imp: FunctionImpl) -> Result<()> {
        self.check_fresh(name)?;
        self.functions.insert(name.to_string(), FunctionSymbol { arity, imp });
        Ok(())
    }

    pub fn register_predicate(
        &mut self,
        name: &str,
        arity: usize,
        imp: PredicateImpl,
    ) -> Result<()> {
        self.check_fresh(name)?;
        self.predicates.insert(name.to_string(), PredicateSymbol { arity, imp });
        Ok(())
    }

    pub fn register_functional(
        &mut self,
        name: &str,
        params: usize,
        imp: FunctionalImpl,
    ) -> Result<()> {
        self.check_fresh(name)?;
        self.functionals.insert(name.to_string(), FunctionalSymbol { params, imp });
        Ok(())
    }

    /// A finite table function: listed argument tuples map to their value,
    /// everything else to `default`.
    pub fn register_table(
        &mut self,
        name: &str,
        arity: usize,
        rows: Vec<(Vec<Nat>, Nat)>,
        default: Nat,
    ) -> Result<()> {
        let table: BTreeMap<Vec<Nat>, Nat> = rows.into_iter().collect();
        self.register_function(
            name,
            arity,
            Arc::new(move |a| table.get(a).copied().unwrap_or(default)),
        )
    }

    /// A name of the form `{base}{n}` not yet registered.
    pub fn fresh_name(&mut self, base: &str) -> String {
        loop {
            self.fresh += 1;
            let name = format!("{base}{}", self.fresh);
            if self.check_fresh(&name).is_ok() {
                return name;
            }
        }
    }

    pub fn function(&self, name: &str) -> Result<&FunctionSymbol> {
        self.functions
            .get(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn predicate(&self, name: &str) -> Result<&PredicateSymbol> {
        self.predicates
            .get(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn functional(&self, name: &str) -> Result<&FunctionalSymbol> {
        self.functionals
            .get(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn has_function(&self, name: &str) -> bool {
        self.functions.contains_key(name)
    }

    pub fn has_predicate(&self, name: &str) -> bool {
        self.predicates.contains_key(name)
    }

    pub fn has_functional(&self, name: &str) -> bool {
        self.functionals.contains_key(name)
    }

    /// Restricts to the named symbols (a finite signature fragment).
    pub fn fragment<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<Fragment> {
        let mut frag = Fragment::default();
        for name in names {
            if let Some(s) = self.functions.get(name) {
                frag.functions.push((name.to_string(), s.arity));
            } else if let Some(s) = self.predicates.get(name) {
                frag.predicates.push((name.to_string(), s.arity));
            } else if let Some(s) = self.functionals.get(name) {
                frag.functionals.push((name.to_string(), s.params + 1));
            } else {
                return Err(Error::UnknownSymbol(name.to_string()));
            }
        }
        Ok(frag)
    }
}

/// A finite set of registered symbol names with their arities, on top of the
/// implicit `f` and numerals. Used to drive enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Fragment {
    pub functions: Vec<(String, usize)>,
    pub predicates: Vec<(String, usize)>,
    /// Arity includes the trailing prefix-length argument.
    pub functionals: Vec<(String, usize)>,
}

impl Fragment {
    /// `{f, constants}`.
    pub fn atomic() -> Self {
        Fragment::default()
    }

    pub fn names(&self) -> Vec<&str> {
        self.functions
            .iter()
            .chain(&self.predicates)
            .chain(&self.functionals)
            .map(|(n, _)| n.as_str())
            .collect()
    }
}
