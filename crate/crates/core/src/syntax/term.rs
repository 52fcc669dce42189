use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::subst::Subst;
use super::sym::Sym;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Term {
    Var(usize),
    App(Sym, Vec<Term>),
}

impl Term {
    pub fn var(n: usize) -> Term {
        Term::Var(n)
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(Sym::new(f), args)
    }

    pub fn constant(c: &str) -> Term {
        Term::App(Sym::new(c), Vec::new())
    }

    pub fn subst(&self, sigma: &Subst) -> Term {
        match self {
            Term::Var(x) => sigma.apply(*x),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.subst(sigma)).collect()),
        }
    }

    pub fn shift(&self) -> Term {
        self.shift_by(1)
    }

    pub fn shift_by(&self, k: usize) -> Term {
        if k == 0 {
            return self.clone();
        }
        match self {
            Term::Var(x) => Term::Var(x + k),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.shift_by(k)).collect()),
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn collect_free(&self, depth: usize, out: &mut BTreeSet<usize>) {
        match self {
            Term::Var(x) if *x >= depth => {
                out.insert(x - depth);
            }
            Term::Var(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_free(depth, out)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_free(0, &mut out);
        out
    }

    pub fn has_var(&self, x: usize) -> bool {
        match self {
            Term::Var(y) => *y == x,
            Term::App(_, args) => args.iter().any(|a| a.has_var(x)),
        }
    }

    pub fn subterms(&self, out: &mut Vec<Term>) {
        if !out.contains(self) {
            out.push(self.clone());
        }
        if let Term::App(_, args) = self {
            args.iter().for_each(|a| a.subterms(out));
        }
    }

    pub fn is_subterm_of(&self, other: &Term) -> bool {
        if self == other {
            return true;
        }
        match other {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().any(|a| self.is_subterm_of(a)),
        }
    }
}
