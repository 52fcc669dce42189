//! Normalization by evaluation into the universal Kripke model whose worlds
//! are contexts and whose atoms are interpreted by cut-free LJT proofs.

use std::cell::Cell;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::kernel::{
    ljt_to_nd, named_close, weaken, Binder, Calculus, Derivation, Judgment, KernelError, Nd, Rule, RuleData,
};
use crate::syntax::{fresh_var, Formula, Subst, Term};

pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NbeError {
    #[error("formula outside the → ∀ ⊥ fragment; apply the de Morgan translation first")]
    NotFragment,
    #[error("expected a derivation in {0:?}")]
    WrongCalculus(Calculus),
    #[error("evaluation ran out of fuel")]
    Fuel,
    #[error("cut formula mismatch: {0}")]
    CutMismatch(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

type Res<T> = Result<T, NbeError>;

/// Continuation turning a focused proof `Δ; φ ⇒ ψ` into `Δ ⇒ ψ`.
pub type Cont = Rc<dyn Fn(&Fuel, &[Formula], Derivation) -> Res<Derivation>>;

pub type ImplFn = Rc<dyn Fn(&Fuel, &[Formula], SemValue) -> Res<SemValue>>;
pub type AllFn = Rc<dyn Fn(&Fuel, &[Formula], &Term) -> Res<SemValue>>;

/// Semantic value in the world it was built at, usable at every larger world.
#[derive(Clone)]
pub enum SemValue {
    /// `Δ ⇒ P t⃗` or `Δ ⇒ ⊥`.
    Base(Derivation),
    Impl(ImplFn),
    All(AllFn),
}

impl fmt::Debug for SemValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemValue::Base(d) => f.debug_tuple("Base").field(&d.end).finish(),
            SemValue::Impl(_) => f.write_str("Impl(<fn>)"),
            SemValue::All(_) => f.write_str("All(<fn>)"),
        }
    }
}

/// Step budget shared by one normalization run.
pub struct Fuel(Cell<u64>);

impl Fuel {
    pub fn new(n: u64) -> Fuel {
        Fuel(Cell::new(n))
    }

    fn burn(&self) -> Res<()> {
        match self.0.get() {
            0 => Err(NbeError::Fuel),
            n => {
                self.0.set(n - 1);
                Ok(())
            }
        }
    }

    pub fn remaining(&self) -> u64 {
        self.0.get()
    }
}

fn ljt(rule: Rule, data: RuleData, premises: Vec<Derivation>, end: Judgment) -> Derivation {
    Derivation::new(Calculus::Ljt, rule, data, premises, end)
}

fn focus_goal(d: &Derivation) -> Formula {
    match &d.end {
        Judgment::LjtFocus { goal, .. } => goal.clone(),
        other => unreachable!("focused judgment expected, found {other:?}"),
    }
}

pub fn transport(v: &SemValue, delta: &[Formula]) -> Res<SemValue> {
    Ok(match v {
        SemValue::Base(d) => SemValue::Base(weaken(d, delta)?),
        other => other.clone(),
    })
}

/// Continuation that closes a focus on the first hypothesis equal to the focused formula.
pub fn hyp_cont() -> Cont {
    Rc::new(|_, delta, foc| {
        let Judgment::LjtFocus { focus, goal, .. } = &foc.end else { unreachable!() };
        let i = delta.iter().position(|f| f == focus).expect("hypothesis present in every larger world");
        let end = Judgment::LjtSeq { ctx: delta.to_vec(), goal: goal.clone() };
        Ok(ljt(Rule::C, RuleData::index(i), vec![foc], end))
    })
}

pub fn reflect(fuel: &Fuel, phi: &Formula, delta: &[Formula], k: Cont) -> Res<SemValue> {
    fuel.burn()?;
    match phi {
        Formula::Bot | Formula::Atom(..) => {
            let ax = ljt(
                Rule::A,
                RuleData::none(),
                Vec::new(),
                Judgment::LjtFocus { ctx: delta.to_vec(), focus: phi.clone(), goal: phi.clone() },
            );
            Ok(SemValue::Base(k(fuel, delta, ax)?))
        }
        Formula::Impl(a, b) => {
            let (a, b) = ((**a).clone(), (**b).clone());
            Ok(SemValue::Impl(Rc::new(move |fuel, d1, arg| {
                let (a, k) = (a.clone(), k.clone());
                let k2: Cont = Rc::new(move |fuel, d2, foc| {
                    let left = reify(fuel, &transport(&arg, d2)?, &a, d2)?;
                    let goal = focus_goal(&foc);
                    let end = Judgment::LjtFocus {
                        ctx: d2.to_vec(),
                        focus: Formula::imp(a.clone(), foc_focus(&foc)),
                        goal,
                    };
                    k(fuel, d2, ljt(Rule::IL, RuleData::none(), vec![left, foc], end))
                });
                reflect(fuel, &b, d1, k2)
            })))
        }
        Formula::All(b) => {
            let b = (**b).clone();
            Ok(SemValue::All(Rc::new(move |fuel, d1, t| {
                let inst = b.inst(t);
                let (t, k, body) = (t.clone(), k.clone(), b.clone());
                let k2: Cont = Rc::new(move |fuel, d2, foc| {
                    let end = Judgment::LjtFocus {
                        ctx: d2.to_vec(),
                        focus: Formula::all(body.clone()),
                        goal: focus_goal(&foc),
                    };
                    k(fuel, d2, ljt(Rule::AL, RuleData::term(t.clone()), vec![foc], end))
                });
                reflect(fuel, &inst, d1, k2)
            })))
        }
        _ => Err(NbeError::NotFragment),
    }
}

fn foc_focus(d: &Derivation) -> Formula {
    match &d.end {
        Judgment::LjtFocus { focus, .. } => focus.clone(),
        _ => unreachable!(),
    }
}

pub fn reify(fuel: &Fuel, v: &SemValue, phi: &Formula, delta: &[Formula]) -> Res<Derivation> {
    fuel.burn()?;
    let end = Judgment::LjtSeq { ctx: delta.to_vec(), goal: phi.clone() };
    match (v, phi) {
        (SemValue::Base(d), _) => Ok(weaken(d, delta)?),
        (SemValue::Impl(f), Formula::Impl(a, b)) => {
            let mut ext = vec![(**a).clone()];
            ext.extend_from_slice(delta);
            let x = reflect(fuel, a, &ext, hyp_cont())?;
            let body = reify(fuel, &f(fuel, &ext, x)?, b, &ext)?;
            Ok(ljt(Rule::IR, RuleData::none(), vec![body], end))
        }
        (SemValue::All(f), Formula::All(b)) => {
            let mut mentioned = delta.to_vec();
            mentioned.push(phi.clone());
            let x = fresh_var(&mentioned);
            let inst = b.inst(&Term::Var(x));
            let open = reify(fuel, &f(fuel, delta, &Term::Var(x))?, &inst, delta)?;
            let body = named_close(&open, x, Binder::All)?;
            Ok(ljt(Rule::AR, RuleData::none(), vec![body], end))
        }
        (v, phi) => unreachable!("value {v:?} does not inhabit {phi:?}"),
    }
}

fn apply(fuel: &Fuel, f: &SemValue, delta: &[Formula], arg: SemValue) -> Res<SemValue> {
    match f {
        SemValue::Impl(f) => f(fuel, delta, arg),
        other => unreachable!("applying {other:?}"),
    }
}

/// Evaluate an NDi fragment proof at world `delta`, its free variables read through `rho`.
pub fn eval(fuel: &Fuel, d: &Derivation, env: &[SemValue], rho: &Subst, delta: &[Formula]) -> Res<SemValue> {
    fuel.burn()?;
    match d.rule {
        Rule::C => {
            let i = d.data.index.unwrap_or_else(|| d.ctx().iter().position(|f| f == d.goal()).expect("hypothesis"));
            transport(&env[i], delta)
        }
        Rule::E => {
            let bot = eval(fuel, &d.premises[0], env, rho, delta)?;
            let SemValue::Base(bot) = bot else { unreachable!("⊥ is a base type") };
            let goal = d.goal().subst(rho);
            let k: Cont = Rc::new(move |_, d2, foc| {
                let b = weaken(&bot, d2)?;
                let psi = focus_goal(&foc);
                if psi == Formula::Bot {
                    return Ok(b);
                }
                Ok(ljt(Rule::E, RuleData::none(), vec![b], Judgment::LjtSeq { ctx: d2.to_vec(), goal: psi }))
            });
            reflect_explode(fuel, &goal, delta, k)
        }
        Rule::II => {
            let (body, env, rho) = (d.premises[0].clone(), env.to_vec(), rho.clone());
            Ok(SemValue::Impl(Rc::new(move |fuel, d1, arg| {
                let mut env2 = Vec::with_capacity(env.len() + 1);
                env2.push(arg);
                env2.extend(env.iter().cloned());
                eval(fuel, &body, &env2, &rho, d1)
            })))
        }
        Rule::IE => {
            let f = eval(fuel, &d.premises[0], env, rho, delta)?;
            let x = eval(fuel, &d.premises[1], env, rho, delta)?;
            apply(fuel, &f, delta, x)
        }
        Rule::AI => {
            let (body, env, rho) = (d.premises[0].clone(), env.to_vec(), rho.clone());
            Ok(SemValue::All(Rc::new(move |fuel, d1, t| {
                eval(fuel, &body, &env, &Subst::cons(t.clone(), &rho), d1)
            })))
        }
        Rule::AE => {
            let f = eval(fuel, &d.premises[0], env, rho, delta)?;
            let t = d.data.term.as_ref().expect("AE witness").subst(rho);
            match f {
                SemValue::All(f) => f(fuel, delta, &t),
                other => unreachable!("instantiating {other:?}"),
            }
        }
        _ => Err(NbeError::NotFragment),
    }
}

/// Value of `phi` obtained from a proof of `⊥`, by reflecting with a continuation that ignores its focus.
fn reflect_explode(fuel: &Fuel, phi: &Formula, delta: &[Formula], k: Cont) -> Res<SemValue> {
    // k ignores the focus, so the axiom at the target atom is as good as any.
    fuel.burn()?;
    match phi {
        Formula::Bot | Formula::Atom(..) => {
            let ax = ljt(
                Rule::A,
                RuleData::none(),
                Vec::new(),
                Judgment::LjtFocus { ctx: delta.to_vec(), focus: phi.clone(), goal: phi.clone() },
            );
            Ok(SemValue::Base(k(fuel, delta, ax)?))
        }
        Formula::Impl(_, b) => {
            let (b, k) = ((**b).clone(), k.clone());
            Ok(SemValue::Impl(Rc::new(move |fuel, d1, _| reflect_explode(fuel, &b, d1, k.clone()))))
        }
        Formula::All(b) => {
            let (b, k) = ((**b).clone(), k.clone());
            Ok(SemValue::All(Rc::new(move |fuel, d1, t| reflect_explode(fuel, &b.inst(t), d1, k.clone()))))
        }
        _ => Err(NbeError::NotFragment),
    }
}

fn fragment_only(j: &Judgment) -> Res<()> {
    if j.formulas().iter().all(Formula::is_fragment) {
        Ok(())
    } else {
        Err(NbeError::NotFragment)
    }
}

/// Cut-free LJT proof with the same end sequent as the NDi input.
pub fn normalize(d: &Derivation) -> Res<Derivation> {
    normalize_with_fuel(d, DEFAULT_FUEL)
}

pub fn normalize_with_fuel(d: &Derivation, fuel: u64) -> Res<Derivation> {
    if d.calc != Calculus::Ndi {
        return Err(NbeError::WrongCalculus(Calculus::Ndi));
    }
    fragment_only(&d.end)?;
    let fuel = Fuel::new(fuel);
    let ctx = d.ctx().to_vec();
    let env: Res<Vec<SemValue>> = ctx.iter().map(|h| reflect(&fuel, h, &ctx, hyp_cont())).collect();
    let v = eval(&fuel, d, &env?, &Subst::id(), &ctx)?;
    let out = reify(&fuel, &v, d.goal(), &ctx)?;
    debug_assert_eq!(out.end, Judgment::LjtSeq { ctx: ctx.clone(), goal: d.goal().clone() });
    Ok(out)
}

/// Admissible cut: `Γ ⇒ φ` and `Γ; φ ⇒ ψ` give `Γ ⇒ ψ`.
pub fn cut(d1: &Derivation, d2: &Derivation) -> Res<Derivation> {
    let (Judgment::LjtSeq { ctx, goal: phi }, Judgment::LjtFocus { ctx: ctx2, focus, goal: psi }) = (&d1.end, &d2.end)
    else {
        return Err(NbeError::CutMismatch("expected Γ ⇒ φ and Γ; φ ⇒ ψ".into()));
    };
    if phi != focus || ctx != ctx2 {
        return Err(NbeError::CutMismatch(format!("{phi:?} against focus {focus:?}")));
    }
    let n1 = ljt_to_nd(d1)?;
    let mut ext = vec![phi.clone()];
    ext.extend_from_slice(ctx);
    // Γ; φ ⇒ ψ read as φ :: Γ ⊢ ψ, then the detour (λφ. ·) n1.
    let body_seq = ljt(
        Rule::C,
        RuleData::index(0),
        vec![weaken(d2, &ext)?],
        Judgment::LjtSeq { ctx: ext.clone(), goal: psi.clone() },
    );
    let body = ljt_to_nd(&body_seq)?;
    normalize(&Nd::I.let_in(n1, body))
}
