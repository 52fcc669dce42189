//! E-dialogues: the opponent answers only the proponent's last move.

use serde::{Deserialize, Serialize};

use super::moves::{illegal, DialogueError, OMove, PMove};
use super::rules::{attacks_of, is_attack_on, justified, Attack, DefenseSet};
use crate::syntax::{Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EState {
    pub ao: Vec<Formula>,
    pub c: Attack,
}

/// The state after the opponent opens with `attack` on the root formula.
pub fn e_open(attack: &Attack) -> EState {
    EState { ao: attack.admission().into_iter().collect(), c: attack.clone() }
}

/// Justified defenses of `ds`; term-indexed sets are instantiated over `terms`.
pub(crate) fn justified_defenses(ao: &[Formula], ds: &DefenseSet, terms: &[Term]) -> Vec<PMove> {
    match ds {
        DefenseSet::FiniteSet(fs) => {
            let mut out: Vec<PMove> = Vec::new();
            for f in fs {
                let m = PMove::Defend { formula: f.clone(), witness: None };
                if justified(ao, f) && !out.contains(&m) {
                    out.push(m);
                }
            }
            out
        }
        DefenseSet::TermIndexed(body) => terms
            .iter()
            .map(|t| (body.inst(t), t))
            .filter(|(f, _)| justified(ao, f))
            .map(|(formula, t)| PMove::Defend { formula, witness: Some(t.clone()) })
            .collect(),
    }
}

/// Justified attacks on members of `ao`.
pub(crate) fn justified_attacks(ao: &[Formula], terms: &[Term]) -> Vec<PMove> {
    let mut out: Vec<PMove> = Vec::new();
    for phi in ao {
        for a in attacks_of(phi, terms) {
            if a.admission().is_none_or(|adm| justified(ao, &adm)) {
                let m = PMove::Attack { target: a.target, kind: a.kind };
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        }
    }
    out
}

pub(crate) fn check_defense(ao: &[Formula], c: &Attack, formula: &Formula, witness: Option<&Term>) -> Result<(), DialogueError> {
    if !c.defenses().contains(formula, witness) {
        return Err(illegal("PD", "the formula does not defend against the current challenge"));
    }
    if !justified(ao, formula) {
        return Err(illegal("PD", "an atomic defense must already be admitted by the opponent"));
    }
    Ok(())
}

pub(crate) fn check_attack(ao: &[Formula], target: &Formula, kind: &crate::dialogue::rules::AttackKind) -> Result<(), DialogueError> {
    if !ao.contains(target) {
        return Err(illegal("PA", "the target is not an opponent admission"));
    }
    let a = Attack::new(kind.clone(), target.clone()).ok_or_else(|| illegal("PA", "not an attack on the target"))?;
    if let Some(adm) = a.admission() {
        if !justified(ao, &adm) {
            return Err(illegal("PA", "an atomic admission must already be admitted by the opponent"));
        }
    }
    Ok(())
}

pub fn e_pmoves(s: &EState, terms: &[Term]) -> Vec<PMove> {
    let mut out = justified_defenses(&s.ao, &s.c.defenses(), terms);
    out.extend(justified_attacks(&s.ao, terms));
    out
}

pub fn e_pmove_legal(s: &EState, m: &PMove) -> Result<(), DialogueError> {
    match m {
        PMove::Defend { formula, witness } => check_defense(&s.ao, &s.c, formula, witness.as_ref()),
        PMove::Attack { target, kind } => check_attack(&s.ao, target, kind),
    }
}

fn cons(f: Option<Formula>, xs: &[Formula]) -> Vec<Formula> {
    let mut out: Vec<Formula> = f.into_iter().collect();
    out.extend_from_slice(xs);
    out
}

/// Applies an opponent response to the proponent move `m` played in `s`.
pub fn e_ostep(s: &EState, m: &PMove, om: &OMove) -> Result<EState, DialogueError> {
    match (m, om) {
        (PMove::Defend { formula, .. }, OMove::Attack { index, target, kind }) => {
            if *index != 0 || target != formula {
                return Err(illegal("OA", "only the defense just admitted can be attacked"));
            }
            let c = Attack::new(kind.clone(), formula.clone()).ok_or_else(|| illegal("OA", "not an attack on the defense"))?;
            Ok(EState { ao: cons(c.admission(), &s.ao), c })
        }
        (PMove::Attack { target, kind }, OMove::Defend { formula, witness }) => {
            let a = Attack { kind: kind.clone(), target: target.clone() };
            if !a.defenses().contains(formula, witness.as_ref()) {
                return Err(illegal("OD", "the formula does not defend against the proponent's attack"));
            }
            Ok(EState { ao: cons(Some(formula.clone()), &s.ao), c: s.c.clone() })
        }
        (PMove::Attack { .. }, OMove::Attack { index, target, kind }) => {
            let adm = m.admitted().ok_or_else(|| illegal("OC", "the proponent's attack admitted nothing"))?;
            if *index != 0 || *target != adm {
                return Err(illegal("OC", "only the proponent's admission can be counterattacked"));
            }
            if !is_attack_on(&adm, kind) {
                return Err(illegal("OC", "not an attack on the admission"));
            }
            let c = Attack { kind: kind.clone(), target: adm };
            Ok(EState { ao: cons(c.admission(), &s.ao), c })
        }
        (PMove::Defend { .. }, OMove::Defend { .. }) => Err(illegal("OD", "the proponent did not attack")),
    }
}

/// Every opponent response, with `∀` attacks and `∃` defenses drawn from `terms`.
pub fn e_omoves(s: &EState, m: &PMove, terms: &[Term]) -> Vec<(OMove, EState)> {
    let mut moves = Vec::new();
    if let Some(adm) = m.admitted() {
        for a in attacks_of(&adm, terms) {
            moves.push(OMove::Attack { index: 0, target: adm.clone(), kind: a.kind });
        }
    }
    if let Some(a) = m.attack() {
        match a.defenses() {
            DefenseSet::FiniteSet(fs) => {
                for f in fs {
                    let om = OMove::Defend { formula: f, witness: None };
                    if !moves.contains(&om) {
                        moves.push(om);
                    }
                }
            }
            DefenseSet::TermIndexed(body) => {
                for t in terms {
                    moves.push(OMove::Defend { formula: body.inst(t), witness: Some(t.clone()) });
                }
            }
        }
    }
    moves
        .into_iter()
        .map(|om| {
            let next = e_ostep(s, m, &om).expect("enumerated responses are legal");
            (om, next)
        })
        .collect()
}
