//! Derivation-level translations between the calculi.

use crate::syntax::{de_morgan, dn_translate, shift_ctx, Formula, Term};

use super::build::Nd;
use super::derivation::{Calculus, Derivation, Judgment, Rule, RuleData};
use super::structural::{reshape, weaken};
use super::KernelError;

fn cons(f: Formula, ctx: &[Formula]) -> Vec<Formula> {
    let mut out = Vec::with_capacity(ctx.len() + 1);
    out.push(f);
    out.extend_from_slice(ctx);
    out
}

fn wk(d: Derivation, ctx: &[Formula]) -> Derivation {
    weaken(&d, ctx).expect("target context extends the source")
}

fn require(d: &Derivation, calc: &[Calculus]) -> Result<(), KernelError> {
    if calc.contains(&d.calc) {
        Ok(())
    } else {
        Err(KernelError::WrongCalculus { expected: calc.to_vec(), found: d.calc })
    }
}

/// Normal natural deduction proof of an LJT sequent.
pub fn ljt_to_nd(d: &Derivation) -> Result<Derivation, KernelError> {
    require(d, &[Calculus::Ljt])?;
    Ok(ljt_seq_nd(d))
}

fn ljt_seq_nd(d: &Derivation) -> Derivation {
    let n = Nd::I;
    match d.rule {
        Rule::C => {
            let ctx = d.ctx();
            let i = d.data.index.unwrap_or_else(|| {
                let Judgment::LjtFocus { focus, .. } = &d.premises[0].end else { unreachable!() };
                ctx.iter().position(|f| f == focus).expect("focus in context")
            });
            ljt_focus_nd(&d.premises[0], n.hyp_at(ctx, i))
        }
        Rule::IR => n.lam(ljt_seq_nd(&d.premises[0])),
        Rule::AR => n.gen(ljt_seq_nd(&d.premises[0])),
        Rule::E => n.explode(ljt_seq_nd(&d.premises[0]), d.goal().clone()),
        r => unreachable!("{r:?} does not conclude an LJT sequent"),
    }
}

/// A focused derivation `Γ; ψ ⇒ φ` read as a function from proofs of `ψ` to proofs of `φ`.
fn ljt_focus_nd(d: &Derivation, h: Derivation) -> Derivation {
    let n = Nd::I;
    match d.rule {
        Rule::A => h,
        Rule::IL => {
            let arg = ljt_seq_nd(&d.premises[0]);
            ljt_focus_nd(&d.premises[1], n.app(h, arg))
        }
        Rule::AL => ljt_focus_nd(&d.premises[0], n.inst(h, d.data.term.clone().expect("AL witness"))),
        r => unreachable!("{r:?} does not conclude a focused sequent"),
    }
}

pub fn ljt_to_lj(d: &Derivation) -> Result<Derivation, KernelError> {
    require(d, &[Calculus::Ljt])?;
    Ok(ljt_seq_lj(d))
}

fn lj(rule: Rule, data: RuleData, premises: Vec<Derivation>, ctx: Vec<Formula>, goal: Formula) -> Derivation {
    Derivation::new(Calculus::Lj, rule, data, premises, Judgment::LjSeq { ctx, goal })
}

fn ljt_seq_lj(d: &Derivation) -> Derivation {
    let (ctx, goal) = (d.ctx().to_vec(), d.goal().clone());
    match d.rule {
        Rule::C => reshape(&ljt_focus_lj(&d.premises[0]), &ctx),
        Rule::IR => lj(Rule::IR, RuleData::none(), vec![ljt_seq_lj(&d.premises[0])], ctx, goal),
        Rule::AR => lj(Rule::AR, RuleData::none(), vec![ljt_seq_lj(&d.premises[0])], ctx, goal),
        Rule::E => lj(Rule::E, RuleData::none(), vec![ljt_seq_lj(&d.premises[0])], ctx, goal),
        r => unreachable!("{r:?} does not conclude an LJT sequent"),
    }
}

/// `Γ; ψ ⇒ φ` becomes `ψ :: Γ ⇒ φ`.
fn ljt_focus_lj(d: &Derivation) -> Derivation {
    let Judgment::LjtFocus { ctx, focus, goal } = &d.end else { unreachable!("focused judgment") };
    let ctx = cons(focus.clone(), ctx);
    match d.rule {
        Rule::A => lj(Rule::A, RuleData::none(), Vec::new(), ctx, goal.clone()),
        Rule::IL => {
            let left = ljt_seq_lj(&d.premises[0]);
            let right = ljt_focus_lj(&d.premises[1]);
            lj(Rule::IL, RuleData::none(), vec![left, right], ctx, goal.clone())
        }
        Rule::AL => {
            let p = ljt_focus_lj(&d.premises[0]);
            lj(Rule::AL, d.data.clone(), vec![p], ctx, goal.clone())
        }
        r => unreachable!("{r:?} does not conclude a focused sequent"),
    }
}

pub fn lj_to_nd(d: &Derivation) -> Result<Derivation, KernelError> {
    require(d, &[Calculus::Lj])?;
    Ok(lj_nd(d))
}

fn lj_nd(d: &Derivation) -> Derivation {
    let n = Nd::I;
    let ctx = d.ctx().to_vec();
    let goal = d.goal().clone();
    let prem = |i: usize| lj_nd(&d.premises[i]);
    let head = || n.hyp_at(&ctx, 0);
    match d.rule {
        Rule::A => head(),
        Rule::C => n.let_in(head(), prem(0)),
        Rule::W | Rule::P => wk(prem(0), &ctx),
        Rule::E => n.explode(prem(0), goal),
        Rule::IL => {
            let arg = wk(prem(0), &ctx);
            let b = n.app(head(), arg);
            let body = prem(1);
            let bctx = cons(body.ctx()[0].clone(), &ctx);
            n.let_in(b, wk(body, &bctx))
        }
        Rule::IR => n.lam(prem(0)),
        Rule::CL => {
            let body = prem(0);
            let (b, a) = (body.ctx()[0].clone(), body.ctx()[1].clone());
            let body = wk(body, &cons(b, &cons(a, &ctx)));
            let f = n.lam(n.lam(body));
            n.app(n.app(f, n.fst(head())), n.snd(head()))
        }
        Rule::CR => n.pair(prem(0), prem(1)),
        Rule::DL => {
            let (l, r) = (prem(0), prem(1));
            let lctx = cons(l.ctx()[0].clone(), &ctx);
            let rctx = cons(r.ctx()[0].clone(), &ctx);
            n.case(head(), wk(l, &lctx), wk(r, &rctx))
        }
        Rule::DR1 => {
            let Formula::Disj(_, b) = goal else { unreachable!() };
            n.inl(prem(0), *b)
        }
        Rule::DR2 => {
            let Formula::Disj(a, _) = goal else { unreachable!() };
            n.inr(*a, prem(0))
        }
        Rule::AL => {
            let t = d.data.term.clone().expect("AL witness");
            let body = prem(0);
            let bctx = cons(body.ctx()[0].clone(), &ctx);
            n.let_in(n.inst(head(), t), wk(body, &bctx))
        }
        Rule::AR => n.gen(prem(0)),
        Rule::EL => {
            let body = prem(0);
            let bctx = cons(body.ctx()[0].clone(), &shift_ctx(&ctx));
            n.unpack(head(), wk(body, &bctx))
        }
        Rule::ER => {
            let Formula::Ex(body) = goal else { unreachable!() };
            n.witness(*body, d.data.term.clone().expect("ER witness"), prem(0))
        }
        r => unreachable!("{r:?} is not an LJ rule"),
    }
}

/// `¬¬A ⊢ A` classically, via the Peirce instance `((A→⊥)→A)→A`.
fn dne(nn: Derivation) -> Derivation {
    let n = Nd::C;
    let Formula::Impl(na, _) = nn.goal().clone() else { unreachable!("double negation expected") };
    let Formula::Impl(a, _) = *na.clone() else { unreachable!("double negation expected") };
    let ctx = nn.ctx().to_vec();
    let kctx = cons((*na).clone(), &ctx);
    let body = n.explode(n.app(wk(nn, &kctx), n.hyp_at(&kctx, 0)), (*a).clone());
    n.app(n.peirce(&ctx, (*a).clone(), Formula::Bot), n.lam(body))
}

/// Classical proof in the `→ ∀ ⊥` fragment of the de Morgan image of the input.
pub fn demorgan_transform(d: &Derivation) -> Result<Derivation, KernelError> {
    require(d, &[Calculus::Ndi, Calculus::Ndc])?;
    Ok(dm(d))
}

fn dm(d: &Derivation) -> Derivation {
    let n = Nd::C;
    let ctx: Vec<Formula> = d.ctx().iter().map(de_morgan).collect();
    let goal = de_morgan(d.goal());
    let prem = |i: usize| dm(&d.premises[i]);
    match d.rule {
        Rule::C => {
            let i = d.data.index.unwrap_or_else(|| d.ctx().iter().position(|f| f == d.goal()).expect("hypothesis"));
            n.hyp_at(&ctx, i)
        }
        Rule::E => n.explode(prem(0), goal),
        Rule::II => n.lam(prem(0)),
        Rule::IE => n.app(prem(0), prem(1)),
        Rule::AI => n.gen(prem(0)),
        Rule::AE => n.inst(prem(0), d.data.term.clone().expect("AE witness")),
        Rule::P => {
            let Formula::Impl(_, phi) = d.goal() else { unreachable!() };
            let Formula::Impl(h, _) = d.goal() else { unreachable!() };
            let Formula::Impl(pq, _) = &**h else { unreachable!() };
            let Formula::Impl(_, psi) = &**pq else { unreachable!() };
            n.peirce(&ctx, de_morgan(phi), de_morgan(psi))
        }
        Rule::CI => {
            // λf. f a b
            let (a, b) = (prem(0), prem(1));
            let Formula::Impl(f_ty, _) = goal else { unreachable!() };
            let fctx = cons(*f_ty, &ctx);
            let body = n.app(n.app(n.hyp_at(&fctx, 0), wk(a, &fctx)), wk(b, &fctx));
            n.lam(body)
        }
        Rule::CE1 | Rule::CE2 => {
            // ¬(A→¬B) gives ¬¬A (resp. ¬¬B): λk. d (λa b. k a)
            let src = prem(0);
            let Formula::Impl(ab, _) = src.goal().clone() else { unreachable!() };
            let Formula::Impl(a, nb) = *ab else { unreachable!() };
            let Formula::Impl(b, _) = *nb else { unreachable!() };
            let kctx = cons(Formula::neg(goal.clone()), &ctx);
            let inner = cons((*b).clone(), &cons((*a).clone(), &kctx));
            let picked = if d.rule == Rule::CE1 { n.hyp_at(&inner, 1) } else { n.hyp_at(&inner, 0) };
            let f = n.lam(n.lam(n.app(n.hyp_at(&inner, 2), picked)));
            dne(n.lam(n.app(wk(src, &kctx), f)))
        }
        Rule::DI1 => {
            // λn. E(n a)
            let a = prem(0);
            let Formula::Impl(na, b) = goal else { unreachable!() };
            let nctx = cons(*na, &ctx);
            n.lam(n.explode(n.app(n.hyp_at(&nctx, 0), wk(a, &nctx)), *b))
        }
        Rule::DI2 => {
            let b = prem(0);
            let Formula::Impl(na, _) = goal else { unreachable!() };
            let nctx = cons(*na, &ctx);
            n.lam(wk(b, &nctx))
        }
        Rule::DE => {
            // ¬¬C from λk. k (r[d (λa. k (l[a]))])
            let (src, l, r) = (prem(0), prem(1), prem(2));
            let kctx = cons(Formula::neg(goal.clone()), &ctx);
            let lctx = cons(l.ctx()[0].clone(), &kctx);
            let na = n.lam(n.app(n.hyp_at(&lctx, 1), wk(l, &lctx)));
            let b = n.app(wk(src, &kctx), na);
            let rctx = cons(r.ctx()[0].clone(), &kctx);
            let c = n.let_in(b, wk(r, &rctx));
            dne(n.lam(n.app(n.hyp_at(&kctx, 0), c)))
        }
        Rule::EI => {
            // λh. h t a
            let a = prem(0);
            let t = d.data.term.clone().expect("EI witness");
            let Formula::Impl(h_ty, _) = goal else { unreachable!() };
            let hctx = cons(*h_ty, &ctx);
            n.lam(n.app(n.inst(n.hyp_at(&hctx, 0), t), wk(a, &hctx)))
        }
        Rule::EE => {
            // ¬¬C from λk. d (gen (λa. ↑k e))
            let (src, e) = (prem(0), prem(1));
            let kctx = cons(Formula::neg(goal.clone()), &ctx);
            let up = shift_ctx(&kctx);
            let actx = cons(e.ctx()[0].clone(), &up);
            let body = n.app(n.hyp_at(&actx, 1), wk(e, &actx));
            let all = n.gen(n.lam(body));
            dne(n.lam(n.app(wk(src, &kctx), all)))
        }
        r => unreachable!("{r:?} is not a natural deduction rule"),
    }
}

/// Intuitionistic proof of `Γᴺ ⊢ φᴺ` from a classical fragment proof of `Γ ⊢ φ`.
pub fn dn_transform(d: &Derivation) -> Result<Derivation, KernelError> {
    require(d, &[Calculus::Ndi, Calculus::Ndc])?;
    if !d.end.formulas().iter().all(Formula::is_fragment) {
        return Err(KernelError::NotFragment);
    }
    Ok(dn(d))
}

fn dn(d: &Derivation) -> Derivation {
    let n = Nd::I;
    let ctx: Vec<Formula> = d.ctx().iter().map(dn_translate).collect();
    let goal = dn_translate(d.goal());
    let prem = |i: usize| dn(&d.premises[i]);
    match d.rule {
        Rule::C => {
            let i = d.data.index.unwrap_or_else(|| d.ctx().iter().position(|f| f == d.goal()).expect("hypothesis"));
            n.hyp_at(&ctx, i)
        }
        Rule::E => n.explode(prem(0), goal),
        Rule::II => n.lam(prem(0)),
        Rule::IE => n.app(prem(0), prem(1)),
        Rule::AI => n.gen(prem(0)),
        Rule::AE => n.inst(prem(0), d.data.term.clone().expect("AE witness")),
        Rule::P => peirce_n(&ctx, &goal),
        r => unreachable!("{r:?} outside the fragment"),
    }
}

/// Proof of `((A→B)→A)→A` for a stable `A`: `λh. stab_A (λk. k (h (λa. E (k a))))`.
fn peirce_n(ctx: &[Formula], goal: &Formula) -> Derivation {
    let n = Nd::I;
    let Formula::Impl(h_ty, a) = goal else { unreachable!() };
    let Formula::Impl(ab, _) = &**h_ty else { unreachable!() };
    let Formula::Impl(_, b) = &**ab else { unreachable!() };
    let hctx = cons((**h_ty).clone(), ctx);
    let kctx = cons(Formula::neg((**a).clone()), &hctx);
    let actx = cons((**a).clone(), &kctx);
    let ab_proof = n.lam(n.explode(n.app(n.hyp_at(&actx, 1), n.hyp_at(&actx, 0)), (**b).clone()));
    let nn = n.lam(n.app(n.hyp_at(&kctx, 0), n.app(n.hyp_at(&kctx, 1), ab_proof)));
    n.lam(n.app(stab(&hctx, a), nn))
}

/// `Γ ⊢ ¬¬A → A` for `A` built from `⊥`, `→` and `∀` over stable leaves.
pub fn stab(ctx: &[Formula], a: &Formula) -> Derivation {
    let n = Nd::I;
    let nctx = cons(Formula::neg(Formula::neg(a.clone())), ctx);
    match a {
        Formula::Bot => {
            // λn. n (λx. x)
            let id = n.lam(n.hyp_at(&cons(Formula::Bot, &nctx), 0));
            n.lam(n.app(n.hyp_at(&nctx, 0), id))
        }
        Formula::Impl(b, c) => {
            // λn. λb. stab_C (λk. n (λf. k (f b)))
            let bctx = cons((**b).clone(), &nctx);
            let kctx = cons(Formula::neg((**c).clone()), &bctx);
            let fctx = cons(a.clone(), &kctx);
            let fb = n.app(n.hyp_at(&fctx, 0), n.hyp_at(&fctx, 2));
            let inner = n.lam(n.app(n.hyp_at(&fctx, 1), fb));
            let nn = n.lam(n.app(n.hyp_at(&kctx, 2), inner));
            n.lam(n.lam(n.app(stab(&bctx, c), nn)))
        }
        Formula::All(b) => {
            // λn. gen (stab_B (λk. ↑n (λf. k (f 0))))
            let up = shift_ctx(&nctx);
            let kctx = cons(Formula::neg((**b).clone()), &up);
            let f_ty = match &up[0] {
                Formula::Impl(inner, _) => match &**inner {
                    Formula::Impl(f, _) => (**f).clone(),
                    _ => unreachable!(),
                },
                _ => unreachable!(),
            };
            let fctx = cons(f_ty, &kctx);
            let f0 = n.inst(n.hyp_at(&fctx, 0), Term::Var(0));
            let inner = n.lam(n.app(n.hyp_at(&fctx, 1), f0));
            let nn = n.lam(n.app(n.hyp_at(&kctx, 1), inner));
            n.lam(n.gen(n.app(stab(&up, b), nn)))
        }
        other => panic!("no stability proof for {other:?}"),
    }
}
