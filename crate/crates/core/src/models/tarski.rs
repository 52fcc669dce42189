use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::syntax::{Formula, Sym, Term};

use super::table::Table;
use super::ModelError;

/// Assignment `ρ(x) = prefix[x]`, or `default` past the prefix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Env {
    pub prefix: Vec<usize>,
    #[serde(default)]
    pub default: usize,
}

impl Env {
    pub fn new(prefix: Vec<usize>, default: usize) -> Env {
        Env { prefix, default }
    }

    pub fn get(&self, x: usize) -> usize {
        self.prefix.get(x).copied().unwrap_or(self.default)
    }

    /// `d ; ρ`
    pub fn cons(&self, d: usize) -> Env {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(d);
        prefix.extend_from_slice(&self.prefix);
        Env { prefix, default: self.default }
    }

    pub fn check(&self, domain: usize) -> Result<(), ModelError> {
        match self.prefix.iter().chain(std::iter::once(&self.default)).find(|&&d| d >= domain) {
            Some(&d) => Err(ModelError::OutOfDomain(d)),
            None => Ok(()),
        }
    }

    /// Every assignment of the first `n` variables, the rest sent to `0`.
    pub fn all(domain: usize, n: usize) -> Vec<Env> {
        super::table::tuples(domain, n).into_iter().map(|p| Env::new(p, 0)).collect()
    }
}

pub type FuncTables = BTreeMap<Sym, Table<usize>>;
pub type PredTables = BTreeMap<Sym, Table<bool>>;

pub(crate) fn check_funcs(funcs: &FuncTables, domain: usize) -> Result<(), ModelError> {
    for (f, t) in funcs {
        t.check(f.as_str(), domain)?;
        if let Some(&d) = t.table.iter().find(|&&d| d >= domain) {
            return Err(ModelError::OutOfDomain(d));
        }
    }
    Ok(())
}

pub(crate) fn eval_in(funcs: &FuncTables, domain: usize, rho: &Env, t: &Term) -> Result<usize, ModelError> {
    match t {
        Term::Var(x) => Ok(rho.get(*x)),
        Term::App(f, args) => {
            let table = funcs.get(f).ok_or_else(|| ModelError::UnknownSymbol(f.to_string()))?;
            if table.arity != args.len() {
                return Err(ModelError::Arity { symbol: f.to_string(), expected: table.arity, found: args.len() });
            }
            let vals = args.iter().map(|a| eval_in(funcs, domain, rho, a)).collect::<Result<Vec<_>, _>>()?;
            Ok(*table.get(domain, &vals))
        }
    }
}

pub(crate) fn atom_in(
    funcs: &FuncTables,
    preds: &PredTables,
    domain: usize,
    rho: &Env,
    p: &Sym,
    args: &[Term],
) -> Result<bool, ModelError> {
    let table = preds.get(p).ok_or_else(|| ModelError::UnknownSymbol(p.to_string()))?;
    if table.arity != args.len() {
        return Err(ModelError::Arity { symbol: p.to_string(), expected: table.arity, found: args.len() });
    }
    let vals = args.iter().map(|a| eval_in(funcs, domain, rho, a)).collect::<Result<Vec<_>, _>>()?;
    Ok(*table.get(domain, &vals))
}

/// A finite, table-backed Tarski model. `bot` is the truth value given to `⊥`;
/// a standard model has `bot = false`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteModel {
    pub domain: usize,
    #[serde(default)]
    pub funcs: FuncTables,
    #[serde(default)]
    pub preds: PredTables,
    #[serde(default)]
    pub bot: bool,
}

impl FiniteModel {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.domain == 0 {
            return Err(ModelError::EmptyDomain);
        }
        check_funcs(&self.funcs, self.domain)?;
        for (p, t) in &self.preds {
            t.check(p.as_str(), self.domain)?;
        }
        Ok(())
    }

    pub fn eval_term(&self, rho: &Env, t: &Term) -> Result<usize, ModelError> {
        eval_in(&self.funcs, self.domain, rho, t)
    }

    pub fn sat(&self, rho: &Env, phi: &Formula) -> Result<bool, ModelError> {
        Ok(match phi {
            Formula::Bot => self.bot,
            Formula::Atom(p, args) => atom_in(&self.funcs, &self.preds, self.domain, rho, p, args)?,
            Formula::Impl(a, b) => !self.sat(rho, a)? || self.sat(rho, b)?,
            Formula::Conj(a, b) => self.sat(rho, a)? && self.sat(rho, b)?,
            Formula::Disj(a, b) => self.sat(rho, a)? || self.sat(rho, b)?,
            Formula::All(a) => {
                for d in 0..self.domain {
                    if !self.sat(&rho.cons(d), a)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Ex(a) => {
                for d in 0..self.domain {
                    if self.sat(&rho.cons(d), a)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    /// `Γ ⊨ φ` at one assignment: some hypothesis fails or the goal holds.
    pub fn entails_at(&self, rho: &Env, ctx: &[Formula], phi: &Formula) -> Result<bool, ModelError> {
        for h in ctx {
            if !self.sat(rho, h)? {
                return Ok(true);
            }
        }
        self.sat(rho, phi)
    }
}
