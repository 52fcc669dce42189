//! Moving between the dialogue calculus and the ordinary sequent calculus.

use super::moves::DialogueError;
use super::rules::{defenses_of, family_index, match_instance, AttackKind, DefenseSet};
use crate::kernel::ljd::admission;
use crate::kernel::{reshape, subst_deriv, weaken, Calculus, Derivation, Judgment, Rule, RuleData};
use crate::syntax::{shift_ctx, Formula, Subst, Term};

fn cons(f: Formula, ctx: &[Formula]) -> Vec<Formula> {
    let mut out = vec![f];
    out.extend_from_slice(ctx);
    out
}

pub fn ljd_r(ctx: &[Formula], goals: DefenseSet, phi: Formula, witness: Option<Term>, premises: Vec<Derivation>) -> Derivation {
    let data = RuleData { formula: Some(phi), term: witness, ..Default::default() };
    Derivation::new(Calculus::Ljd, Rule::R, data, premises, Judgment::LjdSeq { ctx: ctx.to_vec(), goals })
}

pub fn ljd_l(ctx: &[Formula], goals: DefenseSet, phi: Formula, kind: AttackKind, premises: Vec<Derivation>) -> Derivation {
    let data = RuleData { formula: Some(phi), attack: Some(kind), ..Default::default() };
    Derivation::new(Calculus::Ljd, Rule::L, data, premises, Judgment::LjdSeq { ctx: ctx.to_vec(), goals })
}

fn goals_of(d: &Derivation) -> &DefenseSet {
    match &d.end {
        Judgment::LjdSeq { goals, .. } => goals,
        _ => panic!("LJD judgment expected"),
    }
}

/// Premises of an `R` step on `phi` at `ctx`, every formula of which is in
/// the context: the hypothesis is played back against each attack.
fn eta_premises(ctx: &[Formula], phi: &Formula) -> Vec<Derivation> {
    match phi {
        Formula::Atom(..) => Vec::new(),
        Formula::Bot => vec![ljd_l(ctx, DefenseSet::empty(), Formula::Bot, AttackKind::Bot, Vec::new())],
        Formula::Impl(a, b) => {
            let inner = cons((**a).clone(), ctx);
            let goals = DefenseSet::single((**b).clone());
            let mut prem = vec![eta(&cons((**b).clone(), &inner), b, goals.clone(), None)];
            prem.extend(eta_premises(&inner, a));
            vec![ljd_l(&inner, goals, phi.clone(), AttackKind::Impl, prem)]
        }
        Formula::Conj(a, b) => [(a, AttackKind::Left), (b, AttackKind::Right)]
            .into_iter()
            .map(|(x, kind)| {
                let goals = DefenseSet::single((**x).clone());
                let prem = eta(&cons((**x).clone(), ctx), x, goals.clone(), None);
                ljd_l(ctx, goals, phi.clone(), kind, vec![prem])
            })
            .collect(),
        Formula::Disj(a, b) => {
            let goals = DefenseSet::FiniteSet(vec![(**a).clone(), (**b).clone()]);
            let prem = [a, b].into_iter().map(|x| eta(&cons((**x).clone(), ctx), x, goals.clone(), None)).collect();
            vec![ljd_l(ctx, goals, phi.clone(), AttackKind::Or, prem)]
        }
        Formula::All(b) => {
            let up = shift_ctx(ctx);
            let goals = DefenseSet::single((**b).clone());
            let prem = eta(&cons((**b).clone(), &up), b, goals.clone(), None);
            vec![ljd_l(&up, goals, phi.shift(), AttackKind::Term(Term::Var(0)), vec![prem])]
        }
        Formula::Ex(b) => {
            let goals = DefenseSet::TermIndexed((**b).clone());
            let inner_ctx = cons((**b).clone(), &shift_ctx(ctx));
            let shifted = goals.shift();
            let inner = eta(&inner_ctx, b, shifted, Some(Term::Var(0)));
            vec![ljd_l(ctx, goals, phi.clone(), AttackKind::Ex, vec![inner])]
        }
    }
}

/// `ctx ⊢D goals` for a hypothesis `phi ∈ ctx` that is also a goal.
pub fn eta(ctx: &[Formula], phi: &Formula, goals: DefenseSet, witness: Option<Term>) -> Derivation {
    let witness = match &goals {
        DefenseSet::TermIndexed(_) => witness.or_else(|| goals.find_witness(phi)),
        DefenseSet::FiniteSet(_) => None,
    };
    ljd_r(ctx, goals, phi.clone(), witness, eta_premises(ctx, phi))
}

fn n_defenses(d: &Derivation) -> usize {
    let phi = d.data.formula.as_ref().expect("L names its formula");
    let kind = d.data.attack.as_ref().expect("L names its attack");
    match defenses_of(kind, phi) {
        DefenseSet::FiniteSet(fs) => fs.len(),
        DefenseSet::TermIndexed(_) => 1,
    }
}

/// Replaces the goal set of `d` by `goals`, following `L` steps down the
/// defense premises and handing each `R` step to `at_r` together with the
/// number of binders passed on the way.
pub fn retarget(
    d: &Derivation,
    goals: &DefenseSet,
    k: usize,
    at_r: &dyn Fn(&Derivation, &DefenseSet, usize) -> Result<Derivation, DialogueError>,
) -> Result<Derivation, DialogueError> {
    match d.rule {
        Rule::R => at_r(d, goals, k),
        Rule::L => {
            let n = n_defenses(d);
            let ex = matches!(d.data.attack, Some(AttackKind::Ex));
            let mut premises = Vec::with_capacity(d.premises.len());
            for (i, p) in d.premises.iter().enumerate() {
                premises.push(if i >= n {
                    p.clone()
                } else if ex {
                    retarget(p, &goals.shift(), k + 1, at_r)?
                } else {
                    retarget(p, goals, k, at_r)?
                });
            }
            Ok(Derivation::new(d.calc, d.rule, d.data.clone(), premises, Judgment::LjdSeq { ctx: d.ctx().to_vec(), goals: goals.clone() }))
        }
        r => Err(DialogueError::Internal(format!("{r:?} in an LJD derivation"))),
    }
}

/// Grows the goal set to a superset.
pub fn widen(d: &Derivation, goals: &DefenseSet) -> Result<Derivation, DialogueError> {
    fn keep(r: &Derivation, goals: &DefenseSet, _: usize) -> Result<Derivation, DialogueError> {
        let phi = r.data.formula.clone().expect("R names its formula");
        let witness = match goals {
            DefenseSet::FiniteSet(fs) if fs.contains(&phi) => None,
            DefenseSet::TermIndexed(b) => Some(match_instance(b, &phi).ok_or_else(|| {
                DialogueError::Internal("widened goal set misses a defended formula".into())
            })?),
            _ => return Err(DialogueError::Internal("widened goal set misses a defended formula".into())),
        };
        Ok(ljd_r(r.ctx(), goals.clone(), phi, witness, r.premises.clone()))
    }
    retarget(d, goals, 0, &keep)
}

fn lift(d: &Derivation, k: usize) -> Derivation {
    subst_deriv(d, &Subst::shift_by(k))
}

/// `Γ ⇒ φ` in LJ to `Γ ⊢D {φ}`.
pub fn ljd_from_lj(d: &Derivation) -> Result<Derivation, DialogueError> {
    if d.calc != Calculus::Lj {
        return Err(DialogueError::WrongEnd("an LJ sequent".into()));
    }
    let ctx = d.ctx().to_vec();
    let goal = d.goal().clone();
    let single = DefenseSet::single(goal.clone());
    let sub = |i: usize| ljd_from_lj(&d.premises[i]);
    let head = || ctx[0].clone();
    Ok(match d.rule {
        Rule::A => eta(&ctx, &goal, single, None),
        Rule::C | Rule::W | Rule::P => weaken(&sub(0)?, &ctx)?,
        Rule::E => {
            let bot = sub(0)?;
            retarget(&bot, &single, 0, &|r, goals, _| {
                if r.data.formula != Some(Formula::Bot) {
                    return Err(DialogueError::Internal("R step in a refutation defends a non-⊥ formula".into()));
                }
                widen(&r.premises[0], goals)
            })?
        }
        Rule::IR | Rule::AR => ljd_r(&ctx, single, goal, None, vec![sub(0)?]),
        Rule::CR => ljd_r(&ctx, single, goal, None, vec![sub(0)?, sub(1)?]),
        Rule::DR1 | Rule::DR2 => {
            let Formula::Disj(a, b) = &goal else { unreachable!("checked DR") };
            let both = DefenseSet::FiniteSet(vec![(**a).clone(), (**b).clone()]);
            ljd_r(&ctx, single, goal.clone(), None, vec![widen(&sub(0)?, &both)?])
        }
        Rule::ER => {
            let Formula::Ex(b) = &goal else { unreachable!("checked ER") };
            let prem = widen(&sub(0)?, &DefenseSet::TermIndexed((**b).clone()))?;
            ljd_r(&ctx, single, goal.clone(), None, vec![prem])
        }
        Rule::IL => {
            let imp = head();
            let Formula::Impl(a, b) = &imp else { unreachable!("checked IL") };
            let left = weaken(&sub(0)?, &ctx)?;
            let right = weaken(&sub(1)?, &cons((**b).clone(), &ctx))?;
            retarget(&left, &single, 0, &|r, goals, k| {
                let rctx = r.ctx();
                let target = imp.shift_by(k);
                if r.data.formula.as_ref() != Some(&a.shift_by(k)) {
                    return Err(DialogueError::Internal("R step does not defend the antecedent".into()));
                }
                let b_k = b.shift_by(k);
                let mut prem = vec![weaken(&lift(&right, k), &cons(b_k, rctx))?];
                prem.extend(r.premises.iter().cloned());
                Ok(ljd_l(rctx, goals.clone(), target, AttackKind::Impl, prem))
            })?
        }
        Rule::CL => {
            let conj = head();
            let Formula::Conj(a, b) = &conj else { unreachable!("checked CL") };
            let inner_ctx = cons((**b).clone(), &cons((**a).clone(), &ctx));
            let inner = ljd_l(&cons((**a).clone(), &ctx), single.clone(), conj.clone(), AttackKind::Right, vec![weaken(&sub(0)?, &inner_ctx)?]);
            ljd_l(&ctx, single, conj.clone(), AttackKind::Left, vec![inner])
        }
        Rule::DL => {
            let disj = head();
            let Formula::Disj(a, b) = &disj else { unreachable!("checked DL") };
            let l = weaken(&sub(0)?, &cons((**a).clone(), &ctx))?;
            let r = weaken(&sub(1)?, &cons((**b).clone(), &ctx))?;
            ljd_l(&ctx, single, disj.clone(), AttackKind::Or, vec![l, r])
        }
        Rule::AL => {
            let all = head();
            let Formula::All(b) = &all else { unreachable!("checked AL") };
            let t = d.data.term.clone().expect("checked AL");
            let prem = weaken(&sub(0)?, &cons(b.inst(&t), &ctx))?;
            ljd_l(&ctx, single, all.clone(), AttackKind::Term(t), vec![prem])
        }
        Rule::EL => {
            let ex = head();
            let Formula::Ex(b) = &ex else { unreachable!("checked EL") };
            let prem = weaken(&sub(0)?, &cons((**b).clone(), &shift_ctx(&ctx)))?;
            ljd_l(&ctx, single, ex.clone(), AttackKind::Ex, vec![prem])
        }
        r => return Err(DialogueError::Internal(format!("{r:?} is not an LJ rule"))),
    })
}

/// What to do with a proof of one of the goals to reach the target formula.
#[derive(Clone, Debug)]
enum Cont {
    Id(Formula),
    Or(Formula, Formula),
    Ex(Formula),
    Empty(Formula),
}

impl Cont {
    fn target(&self) -> Formula {
        match self {
            Cont::Id(f) | Cont::Empty(f) => f.clone(),
            Cont::Or(a, b) => Formula::disj(a.clone(), b.clone()),
            Cont::Ex(b) => Formula::ex(b.clone()),
        }
    }

    fn shift(&self) -> Cont {
        match self {
            Cont::Id(f) => Cont::Id(f.shift()),
            Cont::Empty(f) => Cont::Empty(f.shift()),
            Cont::Or(a, b) => Cont::Or(a.shift(), b.shift()),
            Cont::Ex(b) => Cont::Ex(b.subst(&Subst::shift().up())),
        }
    }

    fn apply(&self, proof: Derivation, psi: &Formula, witness: Option<&Term>) -> Result<Derivation, DialogueError> {
        let ctx = proof.ctx().to_vec();
        let target = self.target();
        let node = |rule, data, premises| Derivation::new(Calculus::Lj, rule, data, premises, Judgment::LjSeq { ctx: ctx.clone(), goal: target.clone() });
        match self {
            Cont::Id(_) => Ok(proof),
            Cont::Or(a, _) => Ok(node(if psi == a { Rule::DR1 } else { Rule::DR2 }, RuleData::none(), vec![proof])),
            Cont::Ex(b) => {
                let t = witness.cloned().or_else(|| match_instance(b, psi)).ok_or_else(|| DialogueError::Internal("no witness".into()))?;
                Ok(node(Rule::ER, RuleData::term(t), vec![proof]))
            }
            Cont::Empty(_) => Err(DialogueError::Internal("R step against an empty goal set".into())),
        }
    }
}

fn lj_node(ctx: Vec<Formula>, goal: Formula, rule: Rule, data: RuleData, premises: Vec<Derivation>) -> Derivation {
    Derivation::new(Calculus::Lj, rule, data, premises, Judgment::LjSeq { ctx, goal })
}

/// `Γ ⇒ ψ` from the premises of an `R` step on `ψ` at `Γ`.
fn r_to_lj(ctx: &[Formula], psi: &Formula, premises: &[Derivation]) -> Result<Derivation, DialogueError> {
    let go = |i: usize, cont: Cont| to_lj(&premises[i], &cont);
    Ok(match psi {
        Formula::Atom(..) => reshape(&lj_node(cons(psi.clone(), ctx), psi.clone(), Rule::A, RuleData::none(), vec![]), ctx),
        Formula::Bot => go(0, Cont::Empty(Formula::Bot))?,
        Formula::Impl(_, b) => lj_node(ctx.to_vec(), psi.clone(), Rule::IR, RuleData::none(), vec![go(0, Cont::Id((**b).clone()))?]),
        Formula::Conj(a, b) => {
            let l = go(0, Cont::Id((**a).clone()))?;
            let r = go(1, Cont::Id((**b).clone()))?;
            lj_node(ctx.to_vec(), psi.clone(), Rule::CR, RuleData::none(), vec![l, r])
        }
        Formula::Disj(a, b) => go(0, Cont::Or((**a).clone(), (**b).clone()))?,
        Formula::All(b) => lj_node(ctx.to_vec(), psi.clone(), Rule::AR, RuleData::none(), vec![go(0, Cont::Id((**b).clone()))?]),
        Formula::Ex(b) => go(0, Cont::Ex((**b).clone()))?,
    })
}

fn to_lj(d: &Derivation, cont: &Cont) -> Result<Derivation, DialogueError> {
    let ctx = d.ctx().to_vec();
    let goal = cont.target();
    match d.rule {
        Rule::R => {
            let psi = d.data.formula.clone().expect("R names its formula");
            let proof = r_to_lj(&ctx, &psi, &d.premises)?;
            cont.apply(proof, &psi, d.data.term.as_ref())
        }
        Rule::L => {
            let phi = d.data.formula.clone().expect("L names its formula");
            let kind = d.data.attack.clone().expect("L names its attack");
            let here = cons(phi.clone(), &ctx);
            let node = |rule, data, premises| reshape(&lj_node(here.clone(), goal.clone(), rule, data, premises), &ctx);
            let sub = |i: usize| to_lj(&d.premises[i], cont);
            Ok(match (&phi, &kind) {
                (Formula::Bot, AttackKind::Bot) => {
                    let ax = reshape(&lj_node(here.clone(), Formula::Bot, Rule::A, RuleData::none(), vec![]), &here);
                    node(Rule::E, RuleData::none(), vec![ax])
                }
                (Formula::Impl(a, b), AttackKind::Impl) => {
                    let n = n_defenses(d);
                    let arg = reshape(&r_to_lj(&ctx, a, &d.premises[n..])?, &ctx);
                    let rest = reshape(&sub(0)?, &cons((**b).clone(), &ctx));
                    node(Rule::IL, RuleData::none(), vec![arg, rest])
                }
                (Formula::Conj(a, b), AttackKind::Left | AttackKind::Right) => {
                    let want = cons((**b).clone(), &cons((**a).clone(), &ctx));
                    node(Rule::CL, RuleData::none(), vec![reshape(&sub(0)?, &want)])
                }
                (Formula::Disj(..), AttackKind::Or) => node(Rule::DL, RuleData::none(), vec![sub(0)?, sub(1)?]),
                (Formula::All(_), AttackKind::Term(t)) => node(Rule::AL, RuleData::term(t.clone()), vec![sub(0)?]),
                (Formula::Ex(_), AttackKind::Ex) => node(Rule::EL, RuleData::none(), vec![to_lj(&d.premises[0], &cont.shift())?]),
                _ => return Err(DialogueError::Internal(format!("{kind:?} does not attack {phi:?}"))),
            })
        }
        r => Err(DialogueError::Internal(format!("{r:?} in an LJD derivation"))),
    }
}

/// `Γ ⊢D {φ}` to `Γ ⇒ φ`.
pub fn lj_from_ljd(d: &Derivation) -> Result<Derivation, DialogueError> {
    if d.calc != Calculus::Ljd {
        return Err(DialogueError::WrongEnd("an LJD judgment".into()));
    }
    match goals_of(d) {
        DefenseSet::FiniteSet(fs) if fs.len() == 1 => to_lj(d, &Cont::Id(fs[0].clone())),
        _ => Err(DialogueError::NotSingleton),
    }
}

/// Premise of an `R` step that answers the attack `kind` on its formula,
/// instantiated at the attack's term.
pub fn r_premise_for(premises: &[Derivation], phi: &Formula, kind: &AttackKind) -> Option<Derivation> {
    let i = family_index(phi, kind)?;
    let p = premises.get(i)?;
    Some(match kind {
        AttackKind::Term(t) => subst_deriv(p, &Subst::single(t.clone())),
        _ => p.clone(),
    })
}

/// Premise of an `L` step that continues after the opponent admits `theta`.
pub fn l_premise_for(d: &Derivation, theta: &Formula, witness: Option<&Term>) -> Option<Derivation> {
    let phi = d.data.formula.as_ref()?;
    let kind = d.data.attack.as_ref()?;
    match defenses_of(kind, phi) {
        DefenseSet::FiniteSet(fs) => fs.iter().position(|f| f == theta).map(|i| d.premises[i].clone()),
        DefenseSet::TermIndexed(body) => {
            let t = witness.cloned().or_else(|| match_instance(&body, theta))?;
            (body.inst(&t) == *theta).then(|| subst_deriv(&d.premises[0], &Subst::single(t)))
        }
    }
}

/// Counter-attack premises of an `L` step: the family for its admission.
pub fn l_counter_premises(d: &Derivation) -> &[Derivation] {
    &d.premises[n_defenses(d)..]
}

pub fn l_admission(d: &Derivation) -> Option<Formula> {
    admission(d.data.formula.as_ref()?, d.data.attack.as_ref()?)
}
