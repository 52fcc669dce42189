use serde::{Deserialize, Serialize};

use super::term::Term;

/// Parallel substitution `σ(x) = prefix[x]` for `x < |prefix|`,
/// otherwise `Var(x - |prefix| + offset)`.
///
/// Values are kept canonical, so two substitutions with the same
/// denotation compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subst {
    prefix: Vec<Term>,
    offset: usize,
}

impl Default for Subst {
    fn default() -> Self {
        Subst::id()
    }
}

impl Subst {
    pub fn new(prefix: Vec<Term>, offset: usize) -> Subst {
        let mut s = Subst { prefix, offset };
        s.canonicalize();
        s
    }

    pub fn id() -> Subst {
        Subst { prefix: Vec::new(), offset: 0 }
    }

    pub fn shift() -> Subst {
        Subst::shift_by(1)
    }

    pub fn shift_by(k: usize) -> Subst {
        Subst { prefix: Vec::new(), offset: k }
    }

    /// `t ; σ`
    pub fn cons(t: Term, sigma: &Subst) -> Subst {
        let mut prefix = Vec::with_capacity(sigma.prefix.len() + 1);
        prefix.push(t);
        prefix.extend(sigma.prefix.iter().cloned());
        Subst::new(prefix, sigma.offset)
    }

    /// `t ; id`, the instantiation of the outermost bound variable.
    pub fn single(t: Term) -> Subst {
        Subst::new(vec![t], 0)
    }

    /// Lift under a binder: `Var 0 ; (σ ; shift)`.
    pub fn up(&self) -> Subst {
        if self.is_id() {
            return Subst::id();
        }
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(Term::Var(0));
        prefix.extend(self.prefix.iter().map(Term::shift));
        Subst::new(prefix, self.offset + 1)
    }

    pub fn up_by(&self, k: usize) -> Subst {
        let mut s = self.clone();
        for _ in 0..k {
            s = s.up();
        }
        s
    }

    /// Renaming that sends `x` to `Var 0` and every other `y` to `Var (y+1)`.
    /// Turns a derivation about a fresh name back into a shifted one.
    pub fn abstract_var(x: usize) -> Subst {
        let mut prefix: Vec<Term> = (0..x).map(|y| Term::Var(y + 1)).collect();
        prefix.push(Term::Var(0));
        Subst::new(prefix, x + 2)
    }

    pub fn is_id(&self) -> bool {
        self.prefix.is_empty() && self.offset == 0
    }

    pub fn prefix(&self) -> &[Term] {
        &self.prefix
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn apply(&self, x: usize) -> Term {
        match self.prefix.get(x) {
            Some(t) => t.clone(),
            None => Term::Var(x - self.prefix.len() + self.offset),
        }
    }

    /// Composition in diagrammatic order: `(σ;τ)(x) = σ(x)[τ]`.
    pub fn then(&self, tau: &Subst) -> Subst {
        let len = self.prefix.len();
        let n = len.max((len + tau.prefix.len()).saturating_sub(self.offset));
        let prefix: Vec<Term> = (0..n).map(|x| self.apply(x).subst(tau)).collect();
        // Past n every σ(x) is a variable that τ sends into its own tail.
        let offset = n - len + self.offset - tau.prefix.len() + tau.offset;
        Subst::new(prefix, offset)
    }

    fn canonicalize(&mut self) {
        while let Some(last) = self.prefix.last() {
            if self.offset >= 1 && *last == Term::Var(self.offset - 1) {
                self.prefix.pop();
                self.offset -= 1;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn agree(a: &Subst, b: &Subst) {
        for x in 0..20 {
            assert_eq!(a.apply(x), b.apply(x), "at {x}");
        }
    }

    #[test]
    fn up_of_id_is_id() {
        assert_eq!(Subst::id().up(), Subst::id());
        assert_eq!(Subst::new(vec![Term::Var(0)], 1), Subst::id());
    }

    #[test]
    fn canonical_equality() {
        let a = Subst::new(vec![Term::Var(5), Term::Var(1)], 2);
        let b = Subst::new(vec![Term::Var(5)], 1);
        agree(&a, &b);
        assert_eq!(a, b);
    }

    #[test]
    fn composition_pointwise() {
        let s = Subst::new(vec![Term::app("f", vec![Term::Var(2)]), Term::Var(0)], 3);
        let t = Subst::new(vec![Term::Var(4), Term::constant("c"), Term::Var(0), Term::Var(9)], 1);
        let st = s.then(&t);
        for x in 0..20 {
            assert_eq!(st.apply(x), s.apply(x).subst(&t));
        }
        let ts = t.then(&s);
        for x in 0..20 {
            assert_eq!(ts.apply(x), t.apply(x).subst(&s));
        }
    }

    #[test]
    fn abstract_var_shape() {
        let a = Subst::abstract_var(2);
        assert_eq!(a.apply(0), Term::Var(1));
        assert_eq!(a.apply(2), Term::Var(0));
        assert_eq!(a.apply(3), Term::Var(4));
        agree(&Subst::single(Term::Var(2)).then(&Subst::id()), &Subst::single(Term::Var(2)));
    }

    #[test]
    fn shift_then_single_cancels() {
        let c = Subst::shift().then(&Subst::single(Term::constant("c")));
        assert!(c.is_id());
    }
}
