use std::fmt;

use thiserror::Error;

use crate::dialogue::rules::{is_attack_on, justified};
use crate::syntax::{shift_ctx, Formula};

use super::derivation::{Calculus, Derivation, Judgment, Rule};
use super::ljd::{admission, l_premises, r_premises};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct CheckError {
    /// Child indices from the root to the offending node.
    pub path: Vec<usize>,
    pub calc: Calculus,
    pub rule: Rule,
    pub message: String,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {:?} ({:?} {:?}): {}", self.path, self.calc, self.rule, self.message)
    }
}

type Local = Result<(), String>;

fn cons(f: Formula, ctx: &[Formula]) -> Vec<Formula> {
    let mut out = Vec::with_capacity(ctx.len() + 1);
    out.push(f);
    out.extend_from_slice(ctx);
    out
}

fn arity(d: &Derivation, n: usize) -> Local {
    if d.premises.len() == n {
        Ok(())
    } else {
        Err(format!("expected {n} premises, found {}", d.premises.len()))
    }
}

fn expect_eq<T: PartialEq + fmt::Debug>(what: &str, got: &T, want: &T) -> Local {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: expected {want:?}, found {got:?}"))
    }
}

/// Checks every node and returns the end judgment.
pub fn check(d: &Derivation) -> Result<Judgment, CheckError> {
    let mut path = Vec::new();
    check_node(d, d.calc, &mut path)?;
    Ok(d.end.clone())
}

fn check_node(d: &Derivation, calc: Calculus, path: &mut Vec<usize>) -> Result<(), CheckError> {
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_node(p, calc, path)?;
        path.pop();
    }
    let fail = |message: String| CheckError { path: path.clone(), calc: d.calc, rule: d.rule, message };
    if d.calc != calc {
        return Err(fail(format!("node tagged {:?} inside a {:?} derivation", d.calc, calc)));
    }
    if !d.rule.allowed_in(calc) {
        return Err(fail(format!("rule {:?} does not belong to {:?}", d.rule, calc)));
    }
    let res = match calc {
        Calculus::Ndi | Calculus::Ndc => check_nd(d),
        Calculus::Ljt => check_ljt(d),
        Calculus::Lj => check_lj(d),
        Calculus::Ljd => check_ljd(d),
    };
    res.map_err(fail)
}

fn nd_parts(j: &Judgment) -> Result<(&[Formula], &Formula), String> {
    match j {
        Judgment::NdSeq { ctx, goal } => Ok((ctx, goal)),
        other => Err(format!("expected a natural deduction judgment, found {other:?}")),
    }
}

fn nd_prem(d: &Derivation, i: usize) -> Result<(&[Formula], &Formula), String> {
    nd_parts(&d.premises[i].end)
}

fn same_ctx(d: &Derivation, i: usize, want: &[Formula]) -> Local {
    let (c, _) = nd_prem(d, i)?;
    expect_eq(&format!("context of premise {i}"), &c, &want)
}

fn member(ctx: &[Formula], phi: &Formula, index: Option<usize>) -> Local {
    match index {
        Some(i) => match ctx.get(i) {
            Some(f) if f == phi => Ok(()),
            _ => Err(format!("hypothesis index {i} does not hold {phi:?}")),
        },
        None if ctx.contains(phi) => Ok(()),
        None => Err(format!("{phi:?} is not in the context")),
    }
}

fn check_nd(d: &Derivation) -> Local {
    let (ctx, goal) = nd_parts(&d.end)?;
    let goal_of = |i: usize| nd_prem(d, i).map(|(_, g)| g.clone());
    match d.rule {
        Rule::C => {
            arity(d, 0)?;
            member(ctx, goal, d.data.index)
        }
        Rule::E => {
            arity(d, 1)?;
            same_ctx(d, 0, ctx)?;
            expect_eq("premise goal", &goal_of(0)?, &Formula::Bot)
        }
        Rule::II => {
            arity(d, 1)?;
            let Formula::Impl(a, b) = goal else { return Err("goal is not an implication".into()) };
            same_ctx(d, 0, &cons((**a).clone(), ctx))?;
            expect_eq("premise goal", &goal_of(0)?, b)
        }
        Rule::IE => {
            arity(d, 2)?;
            same_ctx(d, 0, ctx)?;
            same_ctx(d, 1, ctx)?;
            expect_eq("major premise", &goal_of(0)?, &Formula::imp(goal_of(1)?, goal.clone()))
        }
        Rule::CI => {
            arity(d, 2)?;
            same_ctx(d, 0, ctx)?;
            same_ctx(d, 1, ctx)?;
            expect_eq("goal", goal, &Formula::conj(goal_of(0)?, goal_of(1)?))
        }
        Rule::CE1 | Rule::CE2 => {
            arity(d, 1)?;
            same_ctx(d, 0, ctx)?;
            let Formula::Conj(a, b) = goal_of(0)? else { return Err("premise is not a conjunction".into()) };
            expect_eq("goal", goal, if d.rule == Rule::CE1 { &*a } else { &*b })
        }
        Rule::DI1 | Rule::DI2 => {
            arity(d, 1)?;
            same_ctx(d, 0, ctx)?;
            let Formula::Disj(a, b) = goal else { return Err("goal is not a disjunction".into()) };
            expect_eq("premise goal", &goal_of(0)?, if d.rule == Rule::DI1 { a } else { b })
        }
        Rule::DE => {
            arity(d, 3)?;
            same_ctx(d, 0, ctx)?;
            let Formula::Disj(a, b) = goal_of(0)? else { return Err("major premise is not a disjunction".into()) };
            same_ctx(d, 1, &cons(*a, ctx))?;
            same_ctx(d, 2, &cons(*b, ctx))?;
            expect_eq("left branch goal", &goal_of(1)?, goal)?;
            expect_eq("right branch goal", &goal_of(2)?, goal)
        }
        Rule::AI => {
            arity(d, 1)?;
            let Formula::All(a) = goal else { return Err("goal is not universal".into()) };
            same_ctx(d, 0, &shift_ctx(ctx))?;
            expect_eq("premise goal", &goal_of(0)?, a)
        }
        Rule::AE => {
            arity(d, 1)?;
            same_ctx(d, 0, ctx)?;
            let t = d.data.term.as_ref().ok_or("AE needs a witness term")?;
            let Formula::All(a) = goal_of(0)? else { return Err("premise is not universal".into()) };
            expect_eq("goal", goal, &a.inst(t))
        }
        Rule::EI => {
            arity(d, 1)?;
            same_ctx(d, 0, ctx)?;
            let t = d.data.term.as_ref().ok_or("EI needs a witness term")?;
            let Formula::Ex(a) = goal else { return Err("goal is not existential".into()) };
            expect_eq("premise goal", &goal_of(0)?, &a.inst(t))
        }
        Rule::EE => {
            arity(d, 2)?;
            same_ctx(d, 0, ctx)?;
            let Formula::Ex(a) = goal_of(0)? else { return Err("major premise is not existential".into()) };
            same_ctx(d, 1, &cons(*a, &shift_ctx(ctx)))?;
            expect_eq("minor premise goal", &goal_of(1)?, &goal.shift())
        }
        Rule::P => {
            arity(d, 0)?;
            match goal {
                Formula::Impl(h, c) => match &**h {
                    Formula::Impl(pq, p) if p == c => match &**pq {
                        Formula::Impl(p2, _) if p2 == c => Ok(()),
                        _ => Err("not an instance of ((φ→ψ)→φ)→φ".into()),
                    },
                    _ => Err("not an instance of ((φ→ψ)→φ)→φ".into()),
                },
                _ => Err("not an instance of ((φ→ψ)→φ)→φ".into()),
            }
        }
        r => Err(format!("rule {r:?} is not a natural deduction rule")),
    }
}

fn fragment(j: &Judgment) -> Local {
    let ok = j.formulas().iter().all(Formula::is_fragment);
    if ok {
        Ok(())
    } else {
        Err("LJT judgments range over the →, ∀, ⊥ fragment only".into())
    }
}

fn check_ljt(d: &Derivation) -> Local {
    fragment(&d.end)?;
    let prem = |i: usize| &d.premises[i].end;
    match (&d.end, d.rule) {
        (Judgment::LjtFocus { focus, goal, .. }, Rule::A) => {
            arity(d, 0)?;
            expect_eq("goal", goal, focus)
        }
        (Judgment::LjtSeq { ctx, goal }, Rule::C) => {
            arity(d, 1)?;
            let Judgment::LjtFocus { ctx: c, focus, goal: g } = prem(0) else {
                return Err("premise must be focused".into());
            };
            expect_eq("premise context", c, ctx)?;
            expect_eq("premise goal", g, goal)?;
            member(ctx, focus, d.data.index)
        }
        (Judgment::LjtFocus { ctx, focus, goal }, Rule::IL) => {
            arity(d, 2)?;
            let Formula::Impl(a, b) = focus else { return Err("focus is not an implication".into()) };
            expect_eq("left premise", prem(0), &Judgment::LjtSeq { ctx: ctx.clone(), goal: (**a).clone() })?;
            expect_eq(
                "right premise",
                prem(1),
                &Judgment::LjtFocus { ctx: ctx.clone(), focus: (**b).clone(), goal: goal.clone() },
            )
        }
        (Judgment::LjtSeq { ctx, goal }, Rule::IR) => {
            arity(d, 1)?;
            let Formula::Impl(a, b) = goal else { return Err("goal is not an implication".into()) };
            expect_eq("premise", prem(0), &Judgment::LjtSeq { ctx: cons((**a).clone(), ctx), goal: (**b).clone() })
        }
        (Judgment::LjtFocus { ctx, focus, goal }, Rule::AL) => {
            arity(d, 1)?;
            let t = d.data.term.as_ref().ok_or("AL needs a witness term")?;
            let Formula::All(a) = focus else { return Err("focus is not universal".into()) };
            expect_eq("premise", prem(0), &Judgment::LjtFocus { ctx: ctx.clone(), focus: a.inst(t), goal: goal.clone() })
        }
        (Judgment::LjtSeq { ctx, goal }, Rule::AR) => {
            arity(d, 1)?;
            let Formula::All(a) = goal else { return Err("goal is not universal".into()) };
            expect_eq("premise", prem(0), &Judgment::LjtSeq { ctx: shift_ctx(ctx), goal: (**a).clone() })
        }
        (Judgment::LjtSeq { ctx, .. }, Rule::E) => {
            arity(d, 1)?;
            expect_eq("premise", prem(0), &Judgment::LjtSeq { ctx: ctx.clone(), goal: Formula::Bot })
        }
        (j, r) => Err(format!("rule {r:?} cannot conclude {j:?}")),
    }
}

fn lj_seq(ctx: Vec<Formula>, goal: Formula) -> Judgment {
    Judgment::LjSeq { ctx, goal }
}

fn check_lj(d: &Derivation) -> Local {
    let Judgment::LjSeq { ctx, goal } = &d.end else { return Err("expected an LJ sequent".into()) };
    let prem = |i: usize| &d.premises[i].end;
    let head = || ctx.first().ok_or_else(|| "empty context".to_string());
    let tail = || ctx[1..].to_vec();
    match d.rule {
        Rule::A => {
            arity(d, 0)?;
            expect_eq("principal formula", head()?, goal)
        }
        Rule::C => {
            arity(d, 1)?;
            let h = head()?.clone();
            expect_eq("premise", prem(0), &lj_seq(cons(h, ctx), goal.clone()))
        }
        Rule::W => {
            arity(d, 1)?;
            head()?;
            expect_eq("premise", prem(0), &lj_seq(tail(), goal.clone()))
        }
        Rule::P => {
            arity(d, 1)?;
            let i = d.data.index.ok_or("P needs a position")?;
            if i + 1 >= ctx.len() {
                return Err(format!("cannot swap positions {i} and {} of a context of length {}", i + 1, ctx.len()));
            }
            let mut swapped = ctx.clone();
            swapped.swap(i, i + 1);
            expect_eq("premise", prem(0), &lj_seq(swapped, goal.clone()))
        }
        Rule::E => {
            arity(d, 1)?;
            expect_eq("premise", prem(0), &lj_seq(ctx.clone(), Formula::Bot))
        }
        Rule::IL => {
            arity(d, 2)?;
            let Formula::Impl(a, b) = head()? else { return Err("principal formula is not an implication".into()) };
            expect_eq("left premise", prem(0), &lj_seq(tail(), (**a).clone()))?;
            expect_eq("right premise", prem(1), &lj_seq(cons((**b).clone(), &tail()), goal.clone()))
        }
        Rule::IR => {
            arity(d, 1)?;
            let Formula::Impl(a, b) = goal else { return Err("goal is not an implication".into()) };
            expect_eq("premise", prem(0), &lj_seq(cons((**a).clone(), ctx), (**b).clone()))
        }
        Rule::CL => {
            arity(d, 1)?;
            let Formula::Conj(a, b) = head()? else { return Err("principal formula is not a conjunction".into()) };
            let want = cons((**b).clone(), &cons((**a).clone(), &tail()));
            expect_eq("premise", prem(0), &lj_seq(want, goal.clone()))
        }
        Rule::CR => {
            arity(d, 2)?;
            let Formula::Conj(a, b) = goal else { return Err("goal is not a conjunction".into()) };
            expect_eq("left premise", prem(0), &lj_seq(ctx.clone(), (**a).clone()))?;
            expect_eq("right premise", prem(1), &lj_seq(ctx.clone(), (**b).clone()))
        }
        Rule::DL => {
            arity(d, 2)?;
            let Formula::Disj(a, b) = head()? else { return Err("principal formula is not a disjunction".into()) };
            expect_eq("left premise", prem(0), &lj_seq(cons((**a).clone(), &tail()), goal.clone()))?;
            expect_eq("right premise", prem(1), &lj_seq(cons((**b).clone(), &tail()), goal.clone()))
        }
        Rule::DR1 | Rule::DR2 => {
            arity(d, 1)?;
            let Formula::Disj(a, b) = goal else { return Err("goal is not a disjunction".into()) };
            let pick = if d.rule == Rule::DR1 { a } else { b };
            expect_eq("premise", prem(0), &lj_seq(ctx.clone(), (**pick).clone()))
        }
        Rule::AL => {
            arity(d, 1)?;
            let t = d.data.term.as_ref().ok_or("AL needs a witness term")?;
            let Formula::All(a) = head()? else { return Err("principal formula is not universal".into()) };
            expect_eq("premise", prem(0), &lj_seq(cons(a.inst(t), &tail()), goal.clone()))
        }
        Rule::AR => {
            arity(d, 1)?;
            let Formula::All(a) = goal else { return Err("goal is not universal".into()) };
            expect_eq("premise", prem(0), &lj_seq(shift_ctx(ctx), (**a).clone()))
        }
        Rule::EL => {
            arity(d, 1)?;
            let Formula::Ex(a) = head()? else { return Err("principal formula is not existential".into()) };
            let want = cons((**a).clone(), &shift_ctx(&tail()));
            expect_eq("premise", prem(0), &lj_seq(want, goal.shift()))
        }
        Rule::ER => {
            arity(d, 1)?;
            let t = d.data.term.as_ref().ok_or("ER needs a witness term")?;
            let Formula::Ex(a) = goal else { return Err("goal is not existential".into()) };
            expect_eq("premise", prem(0), &lj_seq(ctx.clone(), a.inst(t)))
        }
        r => Err(format!("rule {r:?} is not an LJ rule")),
    }
}

fn check_ljd(d: &Derivation) -> Local {
    let Judgment::LjdSeq { ctx, goals } = &d.end else { return Err("expected an LJD judgment".into()) };
    let ends: Vec<Judgment> = d.premises.iter().map(|p| p.end.clone()).collect();
    match d.rule {
        Rule::R => {
            let phi = d.data.formula.as_ref().ok_or("R needs the defended formula")?;
            if !goals.contains(phi, d.data.term.as_ref()) {
                return Err(format!("{phi:?} is not among the goals {goals:?}"));
            }
            if !justified(ctx, phi) {
                return Err(format!("atomic defense {phi:?} is not justified by the context"));
            }
            expect_eq("premises", &ends, &r_premises(ctx, phi))
        }
        Rule::L => {
            let phi = d.data.formula.as_ref().ok_or("L needs the attacked formula")?;
            let kind = d.data.attack.as_ref().ok_or("L needs the attack")?;
            if !ctx.contains(phi) {
                return Err(format!("attacked formula {phi:?} is not in the context"));
            }
            if !is_attack_on(phi, kind) {
                return Err(format!("{kind:?} is not an attack on {phi:?}"));
            }
            if let Some(adm) = admission(phi, kind) {
                if !justified(ctx, &adm) {
                    return Err(format!("atomic admission {adm:?} is not justified by the context"));
                }
            }
            expect_eq("premises", &ends, &l_premises(ctx, phi, kind, goals))
        }
        r => Err(format!("rule {r:?} is not an LJD rule")),
    }
}
