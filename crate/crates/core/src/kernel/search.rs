//! Bounded proof search. Finding nothing is reported as budget exhaustion,
//! never as unprovability.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{fresh_var, shift_ctx, Formula, Term, Theory};

use super::derivation::{Calculus, Derivation, Judgment, Rule, RuleData};
use super::structural::reshape;
use super::translate::{lj_to_nd, ljt_to_nd};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofSearchBudget {
    pub max_depth: usize,
    pub max_term_size: usize,
    /// Extra witnesses on top of the subterms of the sequent and one fresh variable.
    #[serde(default)]
    pub term_menu: Vec<Term>,
    /// Largest prefix of an enumerated theory that is consulted.
    #[serde(default = "default_prefix")]
    pub theory_prefix: u64,
}

fn default_prefix() -> u64 {
    64
}

impl Default for ProofSearchBudget {
    fn default() -> Self {
        ProofSearchBudget { max_depth: 16, max_term_size: 4, term_menu: Vec::new(), theory_prefix: default_prefix() }
    }
}

impl ProofSearchBudget {
    pub fn depth(max_depth: usize) -> Self {
        ProofSearchBudget { max_depth, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("search cancelled")]
    Cancelled,
    #[error("formula outside the → ∀ ⊥ fragment")]
    NotFragment,
}

fn cons(f: Formula, ctx: &[Formula]) -> Vec<Formula> {
    let mut out = Vec::with_capacity(ctx.len() + 1);
    out.push(f);
    out.extend_from_slice(ctx);
    out
}

fn menu(ctx: &[Formula], goal: &Formula, budget: &ProofSearchBudget) -> Vec<Term> {
    let mut out = Vec::new();
    for f in ctx.iter().chain(std::iter::once(goal)) {
        f.open_subterms(&mut out);
    }
    for t in &budget.term_menu {
        if !out.contains(t) {
            out.push(t.clone());
        }
    }
    let mut all = ctx.to_vec();
    all.push(goal.clone());
    let x = Term::Var(fresh_var(&all));
    if !out.contains(&x) {
        out.push(x);
    }
    out.retain(|t| t.size() <= budget.max_term_size);
    out
}

fn key(ctx: &[Formula], goal: &Formula) -> (Vec<Formula>, Formula) {
    let set: BTreeSet<Formula> = ctx.iter().cloned().collect();
    (set.into_iter().collect(), goal.clone())
}

/// Predicate symbol (or `⊥`) a focus chain on `f` can end in.
fn head(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Impl(_, b) => head(b),
        Formula::All(b) => head(b),
        Formula::Bot | Formula::Atom(..) => Some(f),
        _ => None,
    }
}

fn heads_agree(a: &Formula, b: &Formula) -> bool {
    match (a, b) {
        (Formula::Bot, Formula::Bot) => true,
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => p == q && xs.len() == ys.len(),
        _ => false,
    }
}

struct Ljt<'a> {
    budget: &'a ProofSearchBudget,
    cut: bool,
    trail: Vec<(Vec<Formula>, Formula)>,
}

fn ljt(rule: Rule, data: RuleData, premises: Vec<Derivation>, end: Judgment) -> Derivation {
    Derivation::new(Calculus::Ljt, rule, data, premises, end)
}

impl Ljt<'_> {
    fn seq(&mut self, ctx: &[Formula], goal: &Formula, depth: usize) -> Option<Derivation> {
        if depth == 0 {
            self.cut = true;
            return None;
        }
        let end = Judgment::LjtSeq { ctx: ctx.to_vec(), goal: goal.clone() };
        match goal {
            Formula::Impl(a, b) => {
                let p = self.seq(&cons((**a).clone(), ctx), b, depth - 1)?;
                return Some(ljt(Rule::IR, RuleData::none(), vec![p], end));
            }
            Formula::All(b) => {
                let p = self.seq(&shift_ctx(ctx), b, depth - 1)?;
                return Some(ljt(Rule::AR, RuleData::none(), vec![p], end));
            }
            _ => {}
        }
        let k = key(ctx, goal);
        if self.trail.contains(&k) {
            return None;
        }
        self.trail.push(k);
        let found = self.atomic(ctx, goal, depth, end);
        self.trail.pop();
        found
    }

    fn atomic(&mut self, ctx: &[Formula], goal: &Formula, depth: usize, end: Judgment) -> Option<Derivation> {
        let mut seen = BTreeSet::new();
        for (i, f) in ctx.iter().enumerate() {
            if !seen.insert(f) || !head(f).is_some_and(|h| heads_agree(h, goal)) {
                continue;
            }
            if let Some(p) = self.focus(ctx, f, goal, depth - 1) {
                return Some(ljt(Rule::C, RuleData::index(i), vec![p], end));
            }
        }
        if *goal != Formula::Bot {
            if let Some(p) = self.seq(ctx, &Formula::Bot, depth - 1) {
                return Some(ljt(Rule::E, RuleData::none(), vec![p], end));
            }
        }
        None
    }

    fn focus(&mut self, ctx: &[Formula], focus: &Formula, goal: &Formula, depth: usize) -> Option<Derivation> {
        if depth == 0 {
            self.cut = true;
            return None;
        }
        let end = Judgment::LjtFocus { ctx: ctx.to_vec(), focus: focus.clone(), goal: goal.clone() };
        if focus == goal {
            return Some(ljt(Rule::A, RuleData::none(), Vec::new(), end));
        }
        match focus {
            Formula::Impl(a, b) => {
                if !head(b).is_some_and(|h| heads_agree(h, goal)) {
                    return None;
                }
                let right = self.focus(ctx, b, goal, depth - 1)?;
                let left = self.seq(ctx, a, depth - 1)?;
                Some(ljt(Rule::IL, RuleData::none(), vec![left, right], end))
            }
            Formula::All(b) => {
                for t in menu(ctx, goal, self.budget) {
                    if let Some(p) = self.focus(ctx, &b.inst(&t), goal, depth - 1) {
                        return Some(ljt(Rule::AL, RuleData::term(t), vec![p], end));
                    }
                }
                None
            }
            _ => None,
        }
    }
}

/// Iterative deepening search for a cut-free LJT proof.
pub fn ljt_search(ctx: &[Formula], goal: &Formula, budget: &ProofSearchBudget) -> Result<Derivation, SearchError> {
    ljt_search_cancellable(ctx, goal, budget, &AtomicBool::new(false))
}

pub fn ljt_search_cancellable(
    ctx: &[Formula],
    goal: &Formula,
    budget: &ProofSearchBudget,
    cancel: &AtomicBool,
) -> Result<Derivation, SearchError> {
    if !ctx.iter().chain(std::iter::once(goal)).all(Formula::is_fragment) {
        return Err(SearchError::NotFragment);
    }
    for depth in 1..=budget.max_depth.max(1) {
        if cancel.load(Ordering::Relaxed) {
            return Err(SearchError::Cancelled);
        }
        let mut s = Ljt { budget, cut: false, trail: Vec::new() };
        if let Some(d) = s.seq(ctx, goal, depth) {
            return Ok(d);
        }
        if !s.cut {
            break;
        }
    }
    Err(SearchError::BudgetExhausted)
}

struct Lj<'a> {
    budget: &'a ProofSearchBudget,
    cut: bool,
    trail: Vec<(Vec<Formula>, Formula)>,
}

fn lj(rule: Rule, data: RuleData, premises: Vec<Derivation>, ctx: Vec<Formula>, goal: Formula) -> Derivation {
    Derivation::new(Calculus::Lj, rule, data, premises, Judgment::LjSeq { ctx, goal })
}

impl Lj<'_> {
    /// Left rule on a copy of `ctx[i]` placed at the head, contracted back into `ctx`.
    fn left(&self, ctx: &[Formula], goal: &Formula, i: usize, rule: Rule, data: RuleData, premises: Vec<Derivation>) -> Derivation {
        let node = lj(rule, data, premises, cons(ctx[i].clone(), ctx), goal.clone());
        reshape(&node, ctx)
    }

    fn prove(&mut self, ctx: &[Formula], goal: &Formula, opened: &[Formula], depth: usize) -> Option<Derivation> {
        if depth == 0 {
            self.cut = true;
            return None;
        }
        let d = depth - 1;
        if ctx.contains(goal) {
            let ax = lj(Rule::A, RuleData::none(), Vec::new(), vec![goal.clone()], goal.clone());
            return Some(reshape(&ax, ctx));
        }
        if ctx.contains(&Formula::Bot) {
            let ax = lj(Rule::A, RuleData::none(), Vec::new(), vec![Formula::Bot], Formula::Bot);
            let bot = reshape(&ax, ctx);
            return Some(lj(Rule::E, RuleData::none(), vec![bot], ctx.to_vec(), goal.clone()));
        }
        // Invertible right rules.
        match goal {
            Formula::Impl(a, b) => {
                let p = self.prove(&cons((**a).clone(), ctx), b, opened, d)?;
                return Some(lj(Rule::IR, RuleData::none(), vec![p], ctx.to_vec(), goal.clone()));
            }
            Formula::All(b) => {
                let p = self.prove(&shift_ctx(ctx), b, &shift_ctx(opened), d)?;
                return Some(lj(Rule::AR, RuleData::none(), vec![p], ctx.to_vec(), goal.clone()));
            }
            Formula::Conj(a, b) => {
                let l = self.prove(ctx, a, opened, d)?;
                let r = self.prove(ctx, b, opened, d)?;
                return Some(lj(Rule::CR, RuleData::none(), vec![l, r], ctx.to_vec(), goal.clone()));
            }
            _ => {}
        }
        // Invertible left rules.
        for (i, f) in ctx.iter().enumerate() {
            match f {
                Formula::Conj(a, b) if !(ctx.contains(a) && ctx.contains(b)) => {
                    let pctx = cons((**b).clone(), &cons((**a).clone(), ctx));
                    let p = self.prove(&pctx, goal, opened, d)?;
                    return Some(self.left(ctx, goal, i, Rule::CL, RuleData::none(), vec![p]));
                }
                Formula::Disj(a, b) if !ctx.contains(a) && !ctx.contains(b) => {
                    let l = self.prove(&cons((**a).clone(), ctx), goal, opened, d)?;
                    let r = self.prove(&cons((**b).clone(), ctx), goal, opened, d)?;
                    return Some(self.left(ctx, goal, i, Rule::DL, RuleData::none(), vec![l, r]));
                }
                Formula::Ex(a) if !opened.contains(f) => {
                    let mut op = shift_ctx(opened);
                    op.push(f.shift());
                    let pctx = cons((**a).clone(), &shift_ctx(ctx));
                    let p = self.prove(&pctx, &goal.shift(), &op, d)?;
                    return Some(self.left(ctx, goal, i, Rule::EL, RuleData::none(), vec![p]));
                }
                _ => {}
            }
        }
        let k = key(ctx, goal);
        if self.trail.contains(&k) {
            return None;
        }
        self.trail.push(k);
        let found = self.choose(ctx, goal, opened, d);
        self.trail.pop();
        found
    }

    fn choose(&mut self, ctx: &[Formula], goal: &Formula, opened: &[Formula], d: usize) -> Option<Derivation> {
        let end = |rule, data, ps| lj(rule, data, ps, ctx.to_vec(), goal.clone());
        match goal {
            Formula::Disj(a, b) => {
                if let Some(p) = self.prove(ctx, a, opened, d) {
                    return Some(end(Rule::DR1, RuleData::none(), vec![p]));
                }
                if let Some(p) = self.prove(ctx, b, opened, d) {
                    return Some(end(Rule::DR2, RuleData::none(), vec![p]));
                }
            }
            Formula::Ex(a) => {
                for t in menu(ctx, goal, self.budget) {
                    if let Some(p) = self.prove(ctx, &a.inst(&t), opened, d) {
                        return Some(end(Rule::ER, RuleData::term(t), vec![p]));
                    }
                }
            }
            _ => {}
        }
        let mut seen = BTreeSet::new();
        for (i, f) in ctx.iter().enumerate() {
            if !seen.insert(f) {
                continue;
            }
            match f {
                Formula::Impl(a, b) if !ctx.contains(b) => {
                    let Some(r) = self.prove(&cons((**b).clone(), ctx), goal, opened, d) else { continue };
                    let Some(l) = self.prove(ctx, a, opened, d) else { continue };
                    return Some(self.left(ctx, goal, i, Rule::IL, RuleData::none(), vec![l, r]));
                }
                Formula::All(a) => {
                    for t in menu(ctx, goal, self.budget) {
                        let inst = a.inst(&t);
                        if ctx.contains(&inst) {
                            continue;
                        }
                        if let Some(p) = self.prove(&cons(inst, ctx), goal, opened, d) {
                            return Some(self.left(ctx, goal, i, Rule::AL, RuleData::term(t), vec![p]));
                        }
                    }
                }
                _ => {}
            }
        }
        if *goal != Formula::Bot {
            if let Some(p) = self.prove(ctx, &Formula::Bot, opened, d) {
                return Some(end(Rule::E, RuleData::none(), vec![p]));
            }
        }
        None
    }
}

/// Iterative deepening search for an LJ proof over the full syntax.
pub fn lj_search(ctx: &[Formula], goal: &Formula, budget: &ProofSearchBudget) -> Result<Derivation, SearchError> {
    for depth in 1..=budget.max_depth.max(1) {
        let mut s = Lj { budget, cut: false, trail: Vec::new() };
        if let Some(d) = s.prove(ctx, goal, &[], depth) {
            return Ok(d);
        }
        if !s.cut {
            break;
        }
    }
    Err(SearchError::BudgetExhausted)
}

/// Natural deduction proof of `φ` from a finite part of `T`, searched over growing prefixes.
pub fn theory_prove(
    theory: &Theory,
    phi: &Formula,
    budget: &ProofSearchBudget,
) -> Result<(Vec<Formula>, Derivation), SearchError> {
    let mut n = 1;
    loop {
        let n_eff = n.min(budget.theory_prefix);
        let ctx = theory.prefix(n_eff);
        if let Some(i) = ctx.iter().position(|f| f == phi) {
            let d = super::build::Nd::I.hyp_at(&ctx, i);
            return Ok((ctx, d));
        }
        let all_fragment = ctx.iter().chain(std::iter::once(phi)).all(Formula::is_fragment);
        let found = if all_fragment {
            ljt_search(&ctx, phi, budget).map(|d| ljt_to_nd(&d).expect("LJT input"))
        } else {
            lj_search(&ctx, phi, budget).map(|d| lj_to_nd(&d).expect("LJ input"))
        };
        match found {
            Ok(d) => return Ok((ctx, d)),
            Err(SearchError::BudgetExhausted) if !theory.is_finite() && n_eff < budget.theory_prefix => n *= 2,
            Err(e) => return Err(e),
        }
    }
}
