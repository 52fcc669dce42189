use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::algebra::FiniteHeyting;
use super::HeytingError;
use crate::kernel::{check, Calculus, Derivation};
use crate::syntax::{parse_formula, print_formula, Formula, Subst, Sym, Term};

/// Atom values with finite support; everything else gets `default`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomInterp {
    pub support: BTreeMap<(Sym, Vec<Term>), usize>,
    pub default: usize,
}

impl AtomInterp {
    pub fn constant(default: usize) -> AtomInterp {
        AtomInterp { support: BTreeMap::new(), default }
    }

    pub fn set(&mut self, p: &str, args: Vec<Term>, value: usize) {
        self.support.insert((Sym::new(p), args), value);
    }

    pub fn get(&self, p: &Sym, args: &[Term]) -> usize {
        self.support.get(&(p.clone(), args.to_vec())).copied().unwrap_or(self.default)
    }

    pub fn validate(&self, h: &FiniteHeyting) -> Result<(), HeytingError> {
        match self.support.values().chain([&self.default]).find(|&&v| v >= h.size) {
            Some(&v) => Err(HeytingError::OutOfCarrier(v)),
            None => Ok(()),
        }
    }

    /// Every subterm of a support key, plus one variable that is none of them.
    pub fn representatives(&self) -> Vec<Term> {
        let mut out = Vec::new();
        for (_, args) in self.support.keys() {
            args.iter().for_each(|t| t.subterms(&mut out));
        }
        let fresh = out
            .iter()
            .flat_map(|t| t.free_vars())
            .max()
            .map_or(0, |m| m + 1);
        out.push(Term::Var(fresh));
        out
    }
}

#[derive(Serialize, Deserialize)]
struct InterpRepr {
    support: BTreeMap<String, usize>,
    default: usize,
}

impl Serialize for AtomInterp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let support = self
            .support
            .iter()
            .map(|((p, args), v)| (print_formula(&Formula::Atom(p.clone(), args.clone())), *v))
            .collect();
        InterpRepr { support, default: self.default }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AtomInterp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = InterpRepr::deserialize(d)?;
        let mut support = BTreeMap::new();
        for (key, v) in repr.support {
            match parse_formula(&key).map_err(D::Error::custom)? {
                Formula::Atom(p, args) => {
                    support.insert((p, args), v);
                }
                other => return Err(D::Error::custom(format!("not an atom: {}", print_formula(&other)))),
            }
        }
        Ok(AtomInterp { support, default: repr.default })
    }
}

/// Quantifiers range over the given term set.
pub fn eval_over(h: &FiniteHeyting, i: &AtomInterp, terms: &[Term], phi: &Formula) -> usize {
    match phi {
        Formula::Bot => h.bot,
        Formula::Atom(p, args) => i.get(p, args),
        Formula::Impl(a, b) => h.imp(eval_over(h, i, terms, a), eval_over(h, i, terms, b)),
        Formula::Conj(a, b) => h.meet(eval_over(h, i, terms, a), eval_over(h, i, terms, b)),
        Formula::Disj(a, b) => h.join(eval_over(h, i, terms, a), eval_over(h, i, terms, b)),
        Formula::All(a) => {
            let vals: Vec<usize> = terms.iter().map(|t| eval_over(h, i, terms, &a.inst(t))).collect();
            h.big_meet(&vals).expect("finite lattice")
        }
        Formula::Ex(a) => {
            let vals: Vec<usize> = terms.iter().map(|t| eval_over(h, i, terms, &a.inst(t))).collect();
            h.big_join(&vals).expect("finite lattice")
        }
    }
}

pub fn eval_formula(h: &FiniteHeyting, i: &AtomInterp, phi: &Formula) -> usize {
    eval_over(h, i, &i.representatives(), phi)
}

pub fn eval_ctx(h: &FiniteHeyting, i: &AtomInterp, ctx: &[Formula]) -> usize {
    let vals: Vec<usize> = ctx.iter().map(|f| eval_formula(h, i, f)).collect();
    h.big_meet(&vals).expect("finite lattice")
}

/// All terms of at most `max_size` nodes over the given symbols and variables.
pub fn terms_up_to(funcs: &[(Sym, usize)], vars: usize, max_size: usize) -> Vec<Term> {
    // by_size[k] holds the terms with exactly k nodes
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_size + 1];
    for k in 1..=max_size {
        let mut level = Vec::new();
        if k == 1 {
            level.extend((0..vars).map(Term::Var));
        }
        for (f, arity) in funcs {
            for args in args_with_size(&by_size, *arity, k - 1) {
                level.push(Term::App(f.clone(), args));
            }
        }
        by_size[k] = level;
    }
    by_size.concat()
}

fn args_with_size(by_size: &[Vec<Term>], arity: usize, total: usize) -> Vec<Vec<Term>> {
    if arity == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=total {
        if first >= by_size.len() {
            break;
        }
        for rest in args_with_size(by_size, arity - 1, total - first) {
            for t in &by_size[first] {
                let mut v = vec![t.clone()];
                v.extend(rest.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}

/// Whether `⟦Γ⟧ ≤ ⟦φ⟧` for the end sequent of a checked derivation.
pub fn algebra_soundness_harness(d: &Derivation, h: &FiniteHeyting, i: &AtomInterp) -> Result<bool, HeytingError> {
    harness_under(d, h, i, &Subst::id())
}

/// The same comparison after substituting into the end sequent.
pub fn harness_under(d: &Derivation, h: &FiniteHeyting, i: &AtomInterp, sigma: &Subst) -> Result<bool, HeytingError> {
    let j = check(d)?;
    i.validate(h)?;
    if d.calc == Calculus::Ndc {
        if let Some((x, y)) = h.boolean_witness() {
            return Err(HeytingError::NotBoolean { x, y });
        }
    } else if !d.calc.is_nd() {
        return Err(HeytingError::NotNd(d.calc));
    }
    let j = j.subst(sigma);
    let goal = j.goal().expect("natural deduction sequent");
    Ok(h.leq(eval_ctx(h, i, j.ctx()), eval_formula(h, i, goal)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn clauses() {
        let c = FiniteHeyting::chain(3);
        let mut i = AtomInterp::constant(1);
        i.set("P", vec![Term::constant("c")], 0);
        assert_eq!(eval_formula(&c, &i, &Formula::Bot), 0);
        assert_eq!(eval_formula(&c, &i, &f("p -> p")), 2);
        assert_eq!(eval_formula(&c, &i, &f("forall x. P(x)")), 0);
        assert_eq!(eval_formula(&c, &i, &f("exists x. P(x)")), 1);
        assert_eq!(eval_formula(&c, &i, &f("~p")), 0);
        assert_eq!(eval_formula(&c, &i, &f("~~p")), 2);
    }

    #[test]
    fn self_implication_is_top() {
        for h in [FiniteHeyting::chain(4), FiniteHeyting::boolean(2)] {
            for x in 0..h.size {
                assert_eq!(h.imp(x, x), h.top());
            }
        }
    }

    #[test]
    fn interp_json_keys_are_surface_syntax() {
        let mut i = AtomInterp::constant(0);
        i.set("P", vec![Term::app("f", vec![Term::Var(0)])], 1);
        let v = serde_json::to_value(&i).unwrap();
        let key = v["support"].as_object().unwrap().keys().next().unwrap().clone();
        assert!(key.starts_with("P(f("), "{key}");
        let back: AtomInterp = serde_json::from_value(v).unwrap();
        assert_eq!(back, i);
    }

    #[test]
    fn term_counts() {
        let funcs = vec![(Sym::new("c"), 0), (Sym::new("f"), 1)];
        // x0 c, then f applied to each smaller term
        assert_eq!(terms_up_to(&funcs, 1, 1).len(), 2);
        assert_eq!(terms_up_to(&funcs, 1, 3).len(), 6);
        let g = vec![(Sym::new("g"), 2)];
        assert_eq!(terms_up_to(&g, 1, 3).len(), 2);
    }
}
