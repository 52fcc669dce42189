use std::collections::BTreeSet;

use crate::dialogue::rules::AttackKind;
use crate::syntax::{fresh_var, free_vars_all, shift_ctx, Formula, Subst, Term};

use super::derivation::{Calculus, Derivation, Judgment, Rule, RuleData};
use super::KernelError;

/// Which premises of `d` live under a binder (their context is `↑Γ`).
pub fn binder_premises(d: &Derivation) -> Vec<bool> {
    let mut out = vec![false; d.premises.len()];
    let mark = match (d.calc, d.rule) {
        (Calculus::Ndi | Calculus::Ndc, Rule::AI) => Some(0),
        (Calculus::Ndi | Calculus::Ndc, Rule::EE) => Some(1),
        (Calculus::Ljt | Calculus::Lj, Rule::AR) => Some(0),
        (Calculus::Lj, Rule::EL) => Some(0),
        (Calculus::Ljd, Rule::R) => matches!(d.data.formula, Some(Formula::All(_))).then_some(0),
        (Calculus::Ljd, Rule::L) => matches!(d.data.attack, Some(AttackKind::Ex)).then_some(0),
        _ => None,
    };
    if let Some(i) = mark {
        if i < out.len() {
            out[i] = true;
        }
    }
    out
}

fn subst_data(data: &RuleData, sigma: &Subst) -> RuleData {
    RuleData {
        index: data.index,
        term: data.term.as_ref().map(|t| t.subst(sigma)),
        formula: data.formula.as_ref().map(|f| f.subst(sigma)),
        attack: data.attack.as_ref().map(|a| a.subst(sigma)),
    }
}

/// Instantiate every judgment of `d` with `σ`, lifting it under binders.
pub fn subst_deriv(d: &Derivation, sigma: &Subst) -> Derivation {
    if sigma.is_id() {
        return d.clone();
    }
    let binders = binder_premises(d);
    let up = sigma.up();
    let premises = d
        .premises
        .iter()
        .zip(binders)
        .map(|(p, b)| subst_deriv(p, if b { &up } else { sigma }))
        .collect();
    Derivation::new(d.calc, d.rule, subst_data(&d.data, sigma), premises, d.end.subst(sigma))
}

fn is_superset(delta: &[Formula], gamma: &[Formula]) -> bool {
    gamma.iter().all(|f| delta.contains(f))
}

/// Move `d` to a larger context. LJ trees get explicit structural steps at the root;
/// every other calculus is rebuilt node by node.
pub fn weaken(d: &Derivation, delta: &[Formula]) -> Result<Derivation, KernelError> {
    if !is_superset(delta, d.ctx()) {
        return Err(KernelError::NotSuperset);
    }
    Ok(match d.calc {
        Calculus::Lj => reshape(d, delta),
        _ => weaken_rec(d, delta),
    })
}

fn weaken_rec(d: &Derivation, delta: &[Formula]) -> Derivation {
    if d.ctx() == delta {
        return d.clone();
    }
    let old_len = d.ctx().len();
    let shifted = shift_ctx(delta);
    let premises = d
        .premises
        .iter()
        .zip(binder_premises(d))
        .map(|(p, b)| {
            let k = p.ctx().len() - old_len;
            let mut ctx = p.ctx()[..k].to_vec();
            ctx.extend_from_slice(if b { &shifted } else { delta });
            weaken_rec(p, &ctx)
        })
        .collect();
    let mut data = d.data.clone();
    if d.rule == Rule::C {
        let want = match &d.end {
            Judgment::LjtSeq { .. } => match &d.premises[0].end {
                Judgment::LjtFocus { focus, .. } => focus.clone(),
                _ => unreachable!("checked LJT C node"),
            },
            _ => d.goal().clone(),
        };
        data.index = data.index.map(|i| {
            if delta.get(i) == Some(&want) {
                i
            } else {
                delta.iter().position(|f| *f == want).expect("superset contains the hypothesis")
            }
        });
    }
    Derivation::new(d.calc, d.rule, data, premises, d.end.with_ctx(delta.to_vec()))
}

/// Turn an LJ derivation over `Γ` into one over `Δ` using `W`, `C` and `P`,
/// provided every formula of `Γ` occurs in `Δ`.
pub fn reshape(d: &Derivation, delta: &[Formula]) -> Derivation {
    let goal = d.goal().clone();
    let target = d.ctx().to_vec();
    // Steps are recorded bottom-up as (rule, data, conclusion context).
    let mut steps: Vec<(Rule, RuleData, Vec<Formula>)> = Vec::new();
    let mut cur = delta.to_vec();

    fn bubble(cur: &mut [Formula], j: usize, to: usize, steps: &mut Vec<(Rule, RuleData, Vec<Formula>)>) {
        for i in (to..j).rev() {
            steps.push((Rule::P, RuleData::index(i), cur.to_vec()));
            cur.swap(i, i + 1);
        }
    }

    let count = |xs: &[Formula], f: &Formula| xs.iter().filter(|g| *g == f).count();
    // Drop surplus copies.
    loop {
        let surplus = cur.iter().position(|f| count(&cur, f) > count(&target, f));
        let Some(j) = surplus else { break };
        bubble(&mut cur, j, 0, &mut steps);
        steps.push((Rule::W, RuleData::none(), cur.clone()));
        cur.remove(0);
    }
    // Duplicate missing copies.
    loop {
        let missing = cur.iter().position(|f| count(&cur, f) < count(&target, f));
        let Some(j) = missing else { break };
        bubble(&mut cur, j, 0, &mut steps);
        steps.push((Rule::C, RuleData::none(), cur.clone()));
        let h = cur[0].clone();
        cur.insert(0, h);
    }
    for i in 0..target.len() {
        let j = i + cur[i..].iter().position(|f| *f == target[i]).expect("same multiset");
        bubble(&mut cur, j, i, &mut steps);
    }
    debug_assert_eq!(cur, target);
    let mut acc = d.clone();
    for (rule, data, ctx) in steps.into_iter().rev() {
        acc = Derivation::new(Calculus::Lj, rule, data, vec![acc], Judgment::LjSeq { ctx, goal: goal.clone() });
    }
    acc
}

/// Kind of binder a named conversion goes through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Binder {
    /// `↑Γ ⊢ φ` against `Γ ⊢ φ[x]`.
    All,
    /// `φ :: ↑Γ ⊢ ↑ψ` against `φ[x] :: Γ ⊢ ψ`.
    Ex,
}

/// Replace the de Bruijn eigenvariable by a fresh free variable.
/// Returns the chosen variable and the converted derivation.
pub fn named_open(d: &Derivation, binder: Binder) -> (usize, Derivation) {
    let zero = Subst::single(Term::Var(0));
    let ctx = d.end.ctx();
    let mut mentioned: Vec<Formula> = match binder {
        Binder::All => {
            let mut v = crate::kernel::build::unshift_ctx(ctx);
            if let Some(g) = d.end.goal() {
                v.push(Formula::all(g.clone()));
            }
            v
        }
        Binder::Ex => {
            let mut v = crate::kernel::build::unshift_ctx(&ctx[1..]);
            v.push(Formula::ex(ctx[0].clone()));
            v.extend(d.end.goal().map(|g| g.subst(&zero)));
            v
        }
    };
    if let Judgment::LjdSeq { goals, .. } = &d.end {
        mentioned.extend(goals.subst(&zero).formulas());
    }
    let x = fresh_var(&mentioned);
    (x, subst_deriv(d, &Subst::single(Term::Var(x))))
}

/// Inverse of [`named_open`]; `x` must not occur in the side formulas.
pub fn named_close(d: &Derivation, x: usize, binder: Binder) -> Result<Derivation, KernelError> {
    let ctx = d.end.ctx();
    let side: BTreeSet<usize> = match binder {
        Binder::All => free_vars_all(ctx),
        Binder::Ex => {
            let mut s = free_vars_all(ctx.get(1..).unwrap_or_default());
            if let Some(g) = d.end.goal() {
                s.extend(g.free_vars());
            }
            if let Judgment::LjdSeq { goals, .. } = &d.end {
                s.extend(free_vars_all(&goals.formulas()));
            }
            s
        }
    };
    if side.contains(&x) {
        return Err(KernelError::NotFresh(x));
    }
    Ok(subst_deriv(d, &Subst::abstract_var(x)))
}
