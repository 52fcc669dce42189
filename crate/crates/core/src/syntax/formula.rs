use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::subst::Subst;
use super::sym::Sym;
use super::term::Term;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "FormulaRepr", try_from = "FormulaRepr")]
pub enum Formula {
    Bot,
    Atom(Sym, Vec<Term>),
    Impl(Box<Formula>, Box<Formula>),
    Conj(Box<Formula>, Box<Formula>),
    Disj(Box<Formula>, Box<Formula>),
    All(Box<Formula>),
    Ex(Box<Formula>),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum FormulaRepr {
    Bot(bool),
    Atom(Sym, Vec<Term>),
    Impl(Box<Formula>, Box<Formula>),
    Conj(Box<Formula>, Box<Formula>),
    Disj(Box<Formula>, Box<Formula>),
    All(Box<Formula>),
    Ex(Box<Formula>),
}

impl From<Formula> for FormulaRepr {
    fn from(f: Formula) -> Self {
        match f {
            Formula::Bot => FormulaRepr::Bot(true),
            Formula::Atom(p, a) => FormulaRepr::Atom(p, a),
            Formula::Impl(a, b) => FormulaRepr::Impl(a, b),
            Formula::Conj(a, b) => FormulaRepr::Conj(a, b),
            Formula::Disj(a, b) => FormulaRepr::Disj(a, b),
            Formula::All(a) => FormulaRepr::All(a),
            Formula::Ex(a) => FormulaRepr::Ex(a),
        }
    }
}

impl TryFrom<FormulaRepr> for Formula {
    type Error = String;

    fn try_from(r: FormulaRepr) -> Result<Self, String> {
        Ok(match r {
            FormulaRepr::Bot(true) => Formula::Bot,
            FormulaRepr::Bot(false) => return Err("\"bot\" must be true".into()),
            FormulaRepr::Atom(p, a) => Formula::Atom(p, a),
            FormulaRepr::Impl(a, b) => Formula::Impl(a, b),
            FormulaRepr::Conj(a, b) => Formula::Conj(a, b),
            FormulaRepr::Disj(a, b) => Formula::Disj(a, b),
            FormulaRepr::All(a) => Formula::All(a),
            FormulaRepr::Ex(a) => Formula::Ex(a),
        })
    }
}

impl Formula {
    pub fn atom(p: &str, args: Vec<Term>) -> Formula {
        Formula::Atom(Sym::new(p), args)
    }

    pub fn prop(p: &str) -> Formula {
        Formula::Atom(Sym::new(p), Vec::new())
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Impl(Box::new(a), Box::new(b))
    }

    pub fn conj(a: Formula, b: Formula) -> Formula {
        Formula::Conj(Box::new(a), Box::new(b))
    }

    pub fn disj(a: Formula, b: Formula) -> Formula {
        Formula::Disj(Box::new(a), Box::new(b))
    }

    pub fn all(a: Formula) -> Formula {
        Formula::All(Box::new(a))
    }

    pub fn ex(a: Formula) -> Formula {
        Formula::Ex(Box::new(a))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    /// `⊥ → ⊥`, the unit of the list conjunction.
    pub fn top() -> Formula {
        Formula::imp(Formula::Bot, Formula::Bot)
    }

    /// Right-nested conjunction, `⊥ → ⊥` when empty.
    pub fn big_conj(items: Vec<Formula>) -> Formula {
        let mut it = items.into_iter().rev();
        match it.next() {
            None => Formula::top(),
            Some(last) => it.fold(last, |acc, f| Formula::conj(f, acc)),
        }
    }

    /// Right-nested disjunction, `⊥` when empty.
    pub fn big_disj(items: Vec<Formula>) -> Formula {
        let mut it = items.into_iter().rev();
        match it.next() {
            None => Formula::Bot,
            Some(last) => it.fold(last, |acc, f| Formula::disj(f, acc)),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(..))
    }

    pub fn is_fragment(&self) -> bool {
        match self {
            Formula::Bot | Formula::Atom(..) => true,
            Formula::Impl(a, b) => a.is_fragment() && b.is_fragment(),
            Formula::All(a) => a.is_fragment(),
            Formula::Conj(..) | Formula::Disj(..) | Formula::Ex(..) => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Bot => 1,
            Formula::Atom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Formula::Impl(a, b) | Formula::Conj(a, b) | Formula::Disj(a, b) => 1 + a.size() + b.size(),
            Formula::All(a) | Formula::Ex(a) => 1 + a.size(),
        }
    }

    pub fn subst(&self, sigma: &Subst) -> Formula {
        if sigma.is_id() {
            return self.clone();
        }
        self.subst_inner(sigma)
    }

    fn subst_inner(&self, sigma: &Subst) -> Formula {
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|t| t.subst(sigma)).collect()),
            Formula::Impl(a, b) => Formula::imp(a.subst_inner(sigma), b.subst_inner(sigma)),
            Formula::Conj(a, b) => Formula::conj(a.subst_inner(sigma), b.subst_inner(sigma)),
            Formula::Disj(a, b) => Formula::disj(a.subst_inner(sigma), b.subst_inner(sigma)),
            Formula::All(a) => Formula::all(a.subst_inner(&sigma.up())),
            Formula::Ex(a) => Formula::ex(a.subst_inner(&sigma.up())),
        }
    }

    pub fn shift(&self) -> Formula {
        self.subst(&Subst::shift())
    }

    pub fn shift_by(&self, k: usize) -> Formula {
        self.subst(&Subst::shift_by(k))
    }

    /// `φ[t ; id]`
    pub fn inst(&self, t: &Term) -> Formula {
        self.subst(&Subst::single(t.clone()))
    }

    pub fn collect_free(&self, depth: usize, out: &mut BTreeSet<usize>) {
        match self {
            Formula::Bot => {}
            Formula::Atom(_, args) => args.iter().for_each(|t| t.collect_free(depth, out)),
            Formula::Impl(a, b) | Formula::Conj(a, b) | Formula::Disj(a, b) => {
                a.collect_free(depth, out);
                b.collect_free(depth, out);
            }
            Formula::All(a) | Formula::Ex(a) => a.collect_free(depth + 1, out),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_free(0, &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_free(&self, x: usize) -> bool {
        self.free_vars().contains(&x)
    }

    /// Subterms that make sense outside every binder, brought to the top level.
    pub fn open_subterms(&self, out: &mut Vec<Term>) {
        self.open_subterms_at(0, out)
    }

    fn open_subterms_at(&self, depth: usize, out: &mut Vec<Term>) {
        match self {
            Formula::Bot => {}
            Formula::Atom(_, args) => {
                let mut all = Vec::new();
                args.iter().for_each(|t| t.subterms(&mut all));
                for s in all {
                    let fv = s.free_vars();
                    if fv.iter().all(|&x| x >= depth) {
                        let lowered = s.subst(&Subst::new(vec![Term::Var(0); depth], 0));
                        if !out.contains(&lowered) {
                            out.push(lowered);
                        }
                    }
                }
            }
            Formula::Impl(a, b) | Formula::Conj(a, b) | Formula::Disj(a, b) => {
                a.open_subterms_at(depth, out);
                b.open_subterms_at(depth, out);
            }
            Formula::All(a) | Formula::Ex(a) => a.open_subterms_at(depth + 1, out),
        }
    }

    /// Predicate symbols occurring in the formula together with their arities.
    pub fn atoms(&self) -> Vec<(Sym, usize)> {
        let mut out = Vec::new();
        fn go(f: &Formula, out: &mut Vec<(Sym, usize)>) {
            match f {
                Formula::Bot => {}
                Formula::Atom(p, a) => {
                    if !out.iter().any(|(q, _)| q == p) {
                        out.push((p.clone(), a.len()));
                    }
                }
                Formula::Impl(a, b) | Formula::Conj(a, b) | Formula::Disj(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Formula::All(a) | Formula::Ex(a) => go(a, out),
            }
        }
        go(self, &mut out);
        out
    }
}

pub fn free_vars_all(items: &[Formula]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for f in items {
        f.collect_free(0, &mut out);
    }
    out
}

/// One more than the largest free variable, `0` when everything is closed.
pub fn fresh_var(items: &[Formula]) -> usize {
    free_vars_all(items).iter().next_back().map_or(0, |m| m + 1)
}

pub fn shift_ctx(ctx: &[Formula]) -> Vec<Formula> {
    ctx.iter().map(Formula::shift).collect()
}

pub fn subst_ctx(ctx: &[Formula], sigma: &Subst) -> Vec<Formula> {
    ctx.iter().map(|f| f.subst(sigma)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: Term, b: Term) -> Formula {
        Formula::atom("P", vec![a, b])
    }

    #[test]
    fn json_shape() {
        let f = Formula::imp(Formula::Bot, Formula::all(p(Term::Var(0), Term::app("f", vec![Term::Var(1)]))));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"impl":[{"bot":true},{"all":{"atom":["P",[{"var":0},{"app":["f",[{"var":1}]]}]]}}]}"#
        );
        let back: Formula = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<Formula>(r#"{"bot":false}"#).is_err());
    }

    #[test]
    fn free_vars_under_binder() {
        let f = Formula::all(p(Term::Var(1), Term::Var(0)));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(fresh_var(&[p(Term::Var(7), Term::Var(4))]), 8);
        assert_eq!(fresh_var(&[Formula::all(p(Term::Var(0), Term::Var(0)))]), 0);
    }

    #[test]
    fn inst_under_binder_shifts() {
        let f = Formula::all(p(Term::Var(1), Term::Var(0)));
        let t = Term::app("f", vec![Term::Var(3)]);
        let got = f.subst(&Subst::single(t.clone()));
        assert_eq!(got, Formula::all(p(t.shift(), Term::Var(0))));
    }

    #[test]
    fn open_subterms_skip_bound() {
        let f = Formula::all(p(Term::app("f", vec![Term::Var(0)]), Term::app("g", vec![Term::Var(2)])));
        let mut out = Vec::new();
        f.open_subterms(&mut out);
        assert_eq!(out, vec![Term::app("g", vec![Term::Var(1)]), Term::Var(1)]);
    }

    #[test]
    fn big_connectives() {
        assert_eq!(Formula::big_disj(vec![]), Formula::Bot);
        assert_eq!(Formula::big_conj(vec![]), Formula::top());
        let (a, b, c) = (Formula::prop("a"), Formula::prop("b"), Formula::prop("c"));
        assert_eq!(
            Formula::big_conj(vec![a.clone(), b.clone(), c.clone()]),
            Formula::conj(a, Formula::conj(b, c))
        );
    }
}
