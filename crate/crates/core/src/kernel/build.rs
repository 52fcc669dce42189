//! Smart constructors for natural deduction trees. Each one computes the end
//! judgment from its premises; callers are expected to pass matching shapes.

use crate::syntax::{subst_ctx, Formula, Subst, Term};

use super::derivation::{Calculus, Derivation, Judgment, Rule, RuleData};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Nd(pub Calculus);

fn nd(ctx: Vec<Formula>, goal: Formula) -> Judgment {
    Judgment::NdSeq { ctx, goal }
}

/// Recover `Γ` from `↑Γ`.
pub fn unshift_ctx(ctx: &[Formula]) -> Vec<Formula> {
    subst_ctx(ctx, &Subst::single(Term::Var(0)))
}

impl Nd {
    pub const I: Nd = Nd(Calculus::Ndi);
    pub const C: Nd = Nd(Calculus::Ndc);

    fn node(self, rule: Rule, data: RuleData, premises: Vec<Derivation>, ctx: Vec<Formula>, goal: Formula) -> Derivation {
        Derivation::new(self.0, rule, data, premises, nd(ctx, goal))
    }

    pub fn hyp_at(self, ctx: &[Formula], i: usize) -> Derivation {
        self.node(Rule::C, RuleData::index(i), Vec::new(), ctx.to_vec(), ctx[i].clone())
    }

    /// Panics if `phi` is not in `ctx`.
    pub fn hyp(self, ctx: &[Formula], phi: &Formula) -> Derivation {
        let i = ctx.iter().position(|f| f == phi).unwrap_or_else(|| panic!("{phi:?} not in context"));
        self.hyp_at(ctx, i)
    }

    pub fn explode(self, d: Derivation, goal: Formula) -> Derivation {
        debug_assert_eq!(d.goal(), &Formula::Bot);
        let ctx = d.ctx().to_vec();
        self.node(Rule::E, RuleData::none(), vec![d], ctx, goal)
    }

    /// `II`: `d` proves `b` from `a :: Γ`.
    pub fn lam(self, d: Derivation) -> Derivation {
        let ctx = d.ctx()[1..].to_vec();
        let goal = Formula::imp(d.ctx()[0].clone(), d.goal().clone());
        self.node(Rule::II, RuleData::none(), vec![d], ctx, goal)
    }

    pub fn app(self, f: Derivation, x: Derivation) -> Derivation {
        let Formula::Impl(a, b) = f.goal().clone() else { panic!("applying a non-implication {:?}", f.goal()) };
        debug_assert_eq!(&*a, x.goal());
        let ctx = f.ctx().to_vec();
        self.node(Rule::IE, RuleData::none(), vec![f, x], ctx, *b)
    }

    /// `(λ. body) arg`: binds `arg` as the head hypothesis of `body`.
    pub fn let_in(self, arg: Derivation, body: Derivation) -> Derivation {
        self.app(self.lam(body), arg)
    }

    pub fn pair(self, a: Derivation, b: Derivation) -> Derivation {
        let ctx = a.ctx().to_vec();
        let goal = Formula::conj(a.goal().clone(), b.goal().clone());
        self.node(Rule::CI, RuleData::none(), vec![a, b], ctx, goal)
    }

    pub fn fst(self, d: Derivation) -> Derivation {
        let Formula::Conj(a, _) = d.goal().clone() else { panic!("projection from {:?}", d.goal()) };
        let ctx = d.ctx().to_vec();
        self.node(Rule::CE1, RuleData::none(), vec![d], ctx, *a)
    }

    pub fn snd(self, d: Derivation) -> Derivation {
        let Formula::Conj(_, b) = d.goal().clone() else { panic!("projection from {:?}", d.goal()) };
        let ctx = d.ctx().to_vec();
        self.node(Rule::CE2, RuleData::none(), vec![d], ctx, *b)
    }

    pub fn inl(self, d: Derivation, right: Formula) -> Derivation {
        let ctx = d.ctx().to_vec();
        let goal = Formula::disj(d.goal().clone(), right);
        self.node(Rule::DI1, RuleData::none(), vec![d], ctx, goal)
    }

    pub fn inr(self, left: Formula, d: Derivation) -> Derivation {
        let ctx = d.ctx().to_vec();
        let goal = Formula::disj(left, d.goal().clone());
        self.node(Rule::DI2, RuleData::none(), vec![d], ctx, goal)
    }

    pub fn case(self, d: Derivation, l: Derivation, r: Derivation) -> Derivation {
        let ctx = d.ctx().to_vec();
        let goal = l.goal().clone();
        self.node(Rule::DE, RuleData::none(), vec![d, l, r], ctx, goal)
    }

    /// `AI`: `d` proves the body over `↑Γ`.
    pub fn gen(self, d: Derivation) -> Derivation {
        let ctx = unshift_ctx(d.ctx());
        let goal = Formula::all(d.goal().clone());
        self.node(Rule::AI, RuleData::none(), vec![d], ctx, goal)
    }

    pub fn inst(self, d: Derivation, t: Term) -> Derivation {
        let Formula::All(a) = d.goal().clone() else { panic!("instantiating {:?}", d.goal()) };
        let ctx = d.ctx().to_vec();
        let goal = a.inst(&t);
        self.node(Rule::AE, RuleData::term(t), vec![d], ctx, goal)
    }

    pub fn witness(self, body: Formula, t: Term, d: Derivation) -> Derivation {
        debug_assert_eq!(&body.inst(&t), d.goal());
        let ctx = d.ctx().to_vec();
        self.node(Rule::EI, RuleData::term(t), vec![d], ctx, Formula::ex(body))
    }

    /// `EE`: `e` proves `↑ψ` from `body :: ↑Γ`.
    pub fn unpack(self, d: Derivation, e: Derivation) -> Derivation {
        let ctx = d.ctx().to_vec();
        let goal = e.goal().subst(&Subst::single(Term::Var(0)));
        self.node(Rule::EE, RuleData::none(), vec![d, e], ctx, goal)
    }

    pub fn peirce(self, ctx: &[Formula], phi: Formula, psi: Formula) -> Derivation {
        let goal = Formula::imp(Formula::imp(Formula::imp(phi.clone(), psi), phi.clone()), phi);
        self.node(Rule::P, RuleData::none(), Vec::new(), ctx.to_vec(), goal)
    }
}
