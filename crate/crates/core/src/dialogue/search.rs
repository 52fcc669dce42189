//! Bounded strategy search over E- and D-dialogues, verification of
//! explicit strategies, and extraction of dialogue-calculus derivations.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::dgame::{d_omoves, d_open, d_pmoves, d_pstep, DState};
use super::egame::{e_omoves, e_open, e_pmove_legal, e_pmoves, EState};
use super::interp::{EInterp, DEFAULT_FUEL};
use super::ljd::ljd_r;
use super::moves::{fresh_term, menu_with, DialogueError, OMove, PMove, Variant};
use super::rules::{attack_families, attacks_of, Attack, AttackKind, DefenseSet};
use crate::kernel::{check, subst_deriv, Calculus, Derivation, Judgment};
use crate::syntax::{Formula, Subst, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameBudget {
    /// Proponent moves along any play.
    pub max_depth: usize,
    /// Positions visited before giving up.
    pub max_nodes: usize,
}

impl Default for GameBudget {
    fn default() -> Self {
        GameBudget { max_depth: 12, max_nodes: 1_000_000 }
    }
}

/// A proponent move and a continuation for each opponent response.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plan {
    #[serde(rename = "move")]
    pub mv: PMove,
    pub replies: Vec<(OMove, Plan)>,
}

impl Plan {
    pub fn reply(&self, om: &OMove) -> Option<&Plan> {
        self.replies.iter().find(|(o, _)| o == om).map(|(_, p)| p)
    }

    pub fn size(&self) -> usize {
        1 + self.replies.iter().map(|(_, p)| p.size()).sum::<usize>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitStrategy {
    pub variant: Variant,
    pub formula: Formula,
    pub term_menu: Vec<Term>,
    pub openings: Vec<(Attack, Plan)>,
}

impl ExplicitStrategy {
    pub fn opening(&self, a: &Attack) -> Option<&Plan> {
        self.openings.iter().find(|(o, _)| o == a).map(|(_, p)| p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    Explicit(ExplicitStrategy),
    /// Moves are read off an LJD derivation of `[] ⊢D {φ}` on demand.
    DerivationDriven(Derivation),
}

fn opening_fresh(phi: &Formula) -> Term {
    fresh_term(std::slice::from_ref(phi))
}

fn e_fresh(s: &EState, m: &PMove) -> Term {
    let mut fs = s.ao.clone();
    fs.extend(s.c.formulas());
    fs.extend(m.formulas());
    fresh_term(&fs)
}

fn d_fresh(s: &DState, m: &PMove) -> Term {
    let mut fs = s.ap.clone();
    fs.extend(s.ao.iter().cloned());
    for a in s.cp.iter().chain(&s.co) {
        fs.extend(a.formulas());
    }
    fs.extend(m.formulas());
    fresh_term(&fs)
}

fn canon(xs: &[Formula]) -> Vec<Formula> {
    let mut v = xs.to_vec();
    v.sort();
    v.dedup();
    v
}

trait Game {
    type State: Clone;
    type Key: std::hash::Hash + Eq;
    fn key(s: &Self::State) -> Self::Key;
    fn pmoves(s: &Self::State, terms: &[Term]) -> Vec<PMove>;
    fn replies(s: &Self::State, m: &PMove, terms: &[Term]) -> Vec<(OMove, Self::State)>;
    fn fresh(s: &Self::State, m: &PMove) -> Term;
    fn formulas(s: &Self::State) -> Vec<Formula>;
}

/// Candidate proponent terms: the menu, opponent choices, and the terms the position mentions.
fn proponent_terms<G: Game>(s: &G::State, known: &[Term]) -> Vec<Term> {
    let mut out = Vec::new();
    for f in G::formulas(s) {
        f.open_subterms(&mut out);
    }
    menu_with(known, &out)
}

struct EGame;

impl Game for EGame {
    type State = EState;
    type Key = (Vec<Formula>, Attack);
    fn key(s: &EState) -> Self::Key {
        (canon(&s.ao), s.c.clone())
    }
    fn pmoves(s: &EState, terms: &[Term]) -> Vec<PMove> {
        e_pmoves(s, terms)
    }
    fn replies(s: &EState, m: &PMove, terms: &[Term]) -> Vec<(OMove, EState)> {
        e_omoves(s, m, terms)
    }
    fn fresh(s: &EState, m: &PMove) -> Term {
        e_fresh(s, m)
    }
    fn formulas(s: &EState) -> Vec<Formula> {
        let mut fs = s.ao.clone();
        fs.extend(s.c.formulas());
        fs
    }
}

struct DGame;

impl Game for DGame {
    type State = DState;
    type Key = (Vec<Formula>, Vec<Attack>, Vec<Formula>, Vec<Attack>);
    fn key(s: &DState) -> Self::Key {
        let mut ap = s.ap.clone();
        ap.sort();
        (ap, s.cp.clone(), canon(&s.ao), s.co.clone())
    }
    fn pmoves(s: &DState, terms: &[Term]) -> Vec<PMove> {
        d_pmoves(s, terms)
    }
    fn replies(s: &DState, m: &PMove, terms: &[Term]) -> Vec<(OMove, DState)> {
        let next = d_pstep(s, m).expect("enumerated moves are legal");
        d_omoves(&next, terms)
    }
    fn fresh(s: &DState, m: &PMove) -> Term {
        d_fresh(s, m)
    }
    fn formulas(s: &DState) -> Vec<Formula> {
        let mut fs = s.ao.clone();
        for a in &s.cp {
            fs.extend(a.defenses().formulas());
        }
        fs
    }
}

struct Search<'a, G: Game> {
    menu: &'a [Term],
    nodes: usize,
    max_nodes: usize,
    cut: bool,
    path: HashSet<G::Key>,
}

impl<G: Game> Search<'_, G> {
    fn win(&mut self, s: &G::State, pterms: &[Term], depth: usize) -> Result<Option<Plan>, DialogueError> {
        if depth == 0 {
            self.cut = true;
            return Ok(None);
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(DialogueError::BudgetExhausted);
        }
        let key = G::key(s);
        if self.path.contains(&key) {
            return Ok(None);
        }
        self.path.insert(G::key(s));
        let result = self.try_moves(s, pterms, depth);
        self.path.remove(&key);
        result
    }

    fn try_moves(&mut self, s: &G::State, pterms: &[Term], depth: usize) -> Result<Option<Plan>, DialogueError> {
        'moves: for m in G::pmoves(s, &proponent_terms::<G>(s, pterms)) {
            let oterms = menu_with(self.menu, &[G::fresh(s, &m)]);
            let mut replies = Vec::new();
            for (om, next) in G::replies(s, &m, &oterms) {
                let terms = menu_with(pterms, om.term().into_iter().cloned().collect::<Vec<_>>().as_slice());
                match self.win(&next, &terms, depth - 1)? {
                    Some(p) => replies.push((om, p)),
                    None => continue 'moves,
                }
            }
            return Ok(Some(Plan { mv: m, replies }));
        }
        Ok(None)
    }
}

fn search<G: Game>(
    variant: Variant,
    phi: &Formula,
    budget: &GameBudget,
    menu: &[Term],
    open: impl Fn(&Attack) -> G::State,
) -> Result<ExplicitStrategy, DialogueError> {
    if phi.is_atomic() {
        return Err(DialogueError::Atomic);
    }
    let oterms = menu_with(menu, &[opening_fresh(phi)]);
    let mut st: Search<G> = Search { menu, nodes: 0, max_nodes: budget.max_nodes, cut: false, path: HashSet::new() };
    for depth in 1..=budget.max_depth {
        st.cut = false;
        let mut openings = Vec::new();
        let mut all = true;
        for a in attacks_of(phi, &oterms) {
            let pterms = menu_with(menu, &[a.kind.clone()].iter().filter_map(|k| match k {
                AttackKind::Term(t) => Some(t.clone()),
                _ => None,
            }).collect::<Vec<_>>());
            match st.win(&open(&a), &pterms, depth)? {
                Some(p) => openings.push((a, p)),
                None => {
                    all = false;
                    break;
                }
            }
        }
        if all {
            return Ok(ExplicitStrategy { variant, formula: phi.clone(), term_menu: menu.to_vec(), openings });
        }
        if !st.cut {
            return Err(DialogueError::NoStrategy);
        }
    }
    Err(DialogueError::BudgetExhausted)
}

/// Searches for a winning E-strategy. Opponent terms are the menu plus a
/// variable fresh for the position, so found strategies generalise.
pub fn e_win_search(phi: &Formula, budget: &GameBudget, menu: &[Term]) -> Result<ExplicitStrategy, DialogueError> {
    search::<EGame>(Variant::E, phi, budget, menu, e_open)
}

pub fn d_win_search(phi: &Formula, budget: &GameBudget, menu: &[Term]) -> Result<ExplicitStrategy, DialogueError> {
    search::<DGame>(Variant::D, phi, budget, menu, d_open)
}

fn missing(what: impl std::fmt::Debug) -> DialogueError {
    DialogueError::Uncovered(format!("{what:?}"))
}

fn verify_plan<G: Game>(s: &G::State, plan: &Plan, menu: &[Term], legal: &dyn Fn(&G::State, &PMove) -> bool) -> Result<(), DialogueError> {
    if !legal(s, &plan.mv) {
        return Err(DialogueError::Illegal { rule: plan.mv.rule(), message: format!("{:?}", plan.mv) });
    }
    let oterms = menu_with(menu, &[G::fresh(s, &plan.mv)]);
    for (om, next) in G::replies(s, &plan.mv, &oterms) {
        let child = plan.reply(&om).ok_or_else(|| missing(&om))?;
        verify_plan::<G>(&next, child, menu, legal)?;
    }
    Ok(())
}

fn verify<G: Game>(
    strat: &ExplicitStrategy,
    open: impl Fn(&Attack) -> G::State,
    legal: &dyn Fn(&G::State, &PMove) -> bool,
) -> Result<(), DialogueError> {
    let oterms = menu_with(&strat.term_menu, &[opening_fresh(&strat.formula)]);
    for a in attacks_of(&strat.formula, &oterms) {
        let plan = strat.opening(&a).ok_or_else(|| missing(&a))?;
        verify_plan::<G>(&open(&a), plan, &strat.term_menu, legal)?;
    }
    Ok(())
}

/// Unfolds every opponent response over the strategy's menu and checks each is answered.
pub fn verify_e(strat: &ExplicitStrategy) -> Result<(), DialogueError> {
    verify::<EGame>(strat, e_open, &|s, m| e_pmove_legal(s, m).is_ok())
}

pub fn verify_d(strat: &ExplicitStrategy) -> Result<(), DialogueError> {
    verify::<DGame>(strat, d_open, &|s, m| d_pstep(s, m).is_ok())
}

fn abstract_over(d: Derivation, t: &Term) -> Derivation {
    match t {
        Term::Var(x) => subst_deriv(&d, &Subst::abstract_var(*x)),
        _ => d,
    }
}

/// Continuations for the attack families on `phi`, where `answer` plays the
/// given opponent attack and extracts from the resulting position.
fn family_premises(
    phi: &Formula,
    fresh: &Term,
    answer: &mut dyn FnMut(AttackKind) -> Result<Derivation, DialogueError>,
) -> Result<Vec<Derivation>, DialogueError> {
    attack_families(phi)
        .into_iter()
        .map(|fam| match fam.kind {
            AttackKind::Term(_) => Ok(abstract_over(answer(AttackKind::Term(fresh.clone()))?, fresh)),
            k => answer(k),
        })
        .collect()
}

fn defense_premises(
    a: &Attack,
    fresh: &Term,
    answer: &mut dyn FnMut(OMove) -> Result<Derivation, DialogueError>,
) -> Result<Vec<Derivation>, DialogueError> {
    match a.defenses() {
        DefenseSet::FiniteSet(fs) => fs.into_iter().map(|f| answer(OMove::Defend { formula: f, witness: None })).collect(),
        DefenseSet::TermIndexed(body) => {
            let om = OMove::Defend { formula: body.inst(fresh), witness: Some(fresh.clone()) };
            Ok(vec![abstract_over(answer(om)?, fresh)])
        }
    }
}

fn extract_e(s: &EState, plan: &Plan) -> Result<Derivation, DialogueError> {
    let fresh = e_fresh(s, &plan.mv);
    let follow = |om: OMove| -> Result<Derivation, DialogueError> {
        let next = super::egame::e_ostep(s, &plan.mv, &om)?;
        let child = plan.reply(&om).ok_or_else(|| missing(&om))?;
        extract_e(&next, child)
    };
    let goals = s.c.defenses();
    match &plan.mv {
        PMove::Defend { formula, witness } => {
            let mut answer = |kind| follow(OMove::Attack { index: 0, target: formula.clone(), kind });
            let premises = family_premises(formula, &fresh, &mut answer)?;
            Ok(ljd_r(&s.ao, goals, formula.clone(), witness.clone(), premises))
        }
        PMove::Attack { target, kind } => {
            let a = plan.mv.attack().expect("attack move");
            let mut premises = defense_premises(&a, &fresh, &mut |om| follow(om))?;
            if let Some(adm) = a.admission() {
                let mut answer = |k| follow(OMove::Attack { index: 0, target: adm.clone(), kind: k });
                premises.extend(family_premises(&adm, &fresh, &mut answer)?);
            }
            Ok(super::ljd::ljd_l(&s.ao, goals, target.clone(), kind.clone(), premises))
        }
    }
}

fn extract_d(s: &DState, plan: &Plan) -> Result<Derivation, DialogueError> {
    let fresh = d_fresh(s, &plan.mv);
    let after = d_pstep(s, &plan.mv)?;
    let follow = |om: OMove| -> Result<Derivation, DialogueError> {
        let next = super::dgame::d_ostep(&after, &om)?;
        let child = plan.reply(&om).ok_or_else(|| missing(&om))?;
        extract_d(&next, child)
    };
    let c = s.cp.first().ok_or_else(|| DialogueError::Internal("no open challenge to extract against".into()))?;
    let goals = c.defenses();
    match &plan.mv {
        PMove::Defend { formula, witness } => {
            let mut answer = |kind| follow(OMove::Attack { index: 0, target: formula.clone(), kind });
            let premises = family_premises(formula, &fresh, &mut answer)?;
            Ok(ljd_r(&s.ao, goals, formula.clone(), witness.clone(), premises))
        }
        PMove::Attack { target, kind } => {
            let a = plan.mv.attack().expect("attack move");
            let mut premises = defense_premises(&a, &fresh, &mut |om| follow(om))?;
            if let Some(adm) = a.admission() {
                let mut answer = |k| follow(OMove::Attack { index: 0, target: adm.clone(), kind: k });
                premises.extend(family_premises(&adm, &fresh, &mut answer)?);
            }
            Ok(super::ljd::ljd_l(&s.ao, goals, target.clone(), kind.clone(), premises))
        }
    }
}

fn extract_root(
    strat: &ExplicitStrategy,
    mut from_opening: impl FnMut(&Attack, &Plan) -> Result<Derivation, DialogueError>,
) -> Result<Derivation, DialogueError> {
    let phi = &strat.formula;
    let fresh = opening_fresh(phi);
    let mut answer = |kind: AttackKind| {
        let a = Attack { kind, target: phi.clone() };
        let plan = strat.opening(&a).ok_or_else(|| missing(&a))?;
        from_opening(&a, plan)
    };
    let premises = family_premises(phi, &fresh, &mut answer)?;
    Ok(ljd_r(&[], DefenseSet::single(phi.clone()), phi.clone(), None, premises))
}

/// `[] ⊢D {φ}` from a winning E-strategy.
pub fn ljd_from_estrategy(strat: &ExplicitStrategy) -> Result<Derivation, DialogueError> {
    extract_root(strat, |a, plan| extract_e(&e_open(a), plan))
}

/// `[] ⊢D {φ}` from a winning D-strategy.
pub fn ljd_from_dwin(strat: &ExplicitStrategy) -> Result<Derivation, DialogueError> {
    extract_root(strat, |a, plan| extract_d(&d_open(a), plan))
}

/// Wraps a checked derivation of `[] ⊢D {φ}`.
pub fn strategy_from_ljd(d: &Derivation) -> Result<Strategy, DialogueError> {
    root_formula(d)?;
    Ok(Strategy::DerivationDriven(d.clone()))
}

pub(crate) fn root_formula(d: &Derivation) -> Result<Formula, DialogueError> {
    check(d)?;
    match &d.end {
        Judgment::LjdSeq { ctx, goals: DefenseSet::FiniteSet(fs) } if d.calc == Calculus::Ljd && ctx.is_empty() && fs.len() == 1 => {
            Ok(fs[0].clone())
        }
        _ => Err(DialogueError::WrongEnd("[] ⊢D {φ}".into())),
    }
}

fn unfold_plan(s: &EState, interp: EInterp, menu: &[Term], fuel: &mut usize) -> Result<Plan, DialogueError> {
    if *fuel == 0 {
        return Err(DialogueError::Fuel);
    }
    *fuel -= 1;
    let mv = interp.choose()?;
    let oterms = menu_with(menu, &[e_fresh(s, &mv)]);
    let mut replies = Vec::new();
    for (om, next) in e_omoves(s, &mv, &oterms) {
        let child = interp.respond(&om)?;
        replies.push((om.clone(), unfold_plan(&next, child, menu, fuel)?));
    }
    Ok(Plan { mv, replies })
}

/// The explicit E-strategy a derivation-driven one plays against opponents
/// restricted to `menu` plus fresh variables.
pub fn unfold_e(strat: &Strategy, menu: &[Term]) -> Result<ExplicitStrategy, DialogueError> {
    match strat {
        Strategy::Explicit(e) => Ok(e.clone()),
        Strategy::DerivationDriven(d) => {
            let phi = root_formula(d)?;
            let oterms = menu_with(menu, &[opening_fresh(&phi)]);
            let mut fuel = DEFAULT_FUEL;
            let mut openings = Vec::new();
            for a in attacks_of(&phi, &oterms) {
                let interp = EInterp::open(d, &a)?;
                openings.push((a.clone(), unfold_plan(&e_open(&a), interp, menu, &mut fuel)?));
            }
            Ok(ExplicitStrategy { variant: Variant::E, formula: phi, term_menu: menu.to_vec(), openings })
        }
    }
}
