//! S-dialogues: the proponent's deferred answers form a stack.

use serde::{Deserialize, Serialize};

use super::dgame::list_omoves;
use super::egame::{check_attack, check_defense, justified_attacks, justified_defenses};
use super::moves::{illegal, DialogueError, OMove, PMove};
use super::rules::Attack;
use crate::syntax::{Formula, Term};

/// `c` is the challenge the proponent has to react to; it is `None`
/// while the opponent is to move.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SState {
    pub ap: Vec<Formula>,
    pub ao: Vec<Formula>,
    pub d: Vec<(Attack, Attack)>,
    pub c: Option<Attack>,
}

pub fn s_open(attack: &Attack) -> SState {
    SState { ap: Vec::new(), ao: attack.admission().into_iter().collect(), d: Vec::new(), c: Some(attack.clone()) }
}

pub fn s_pmoves(s: &SState, terms: &[Term]) -> Vec<PMove> {
    let Some(c) = &s.c else { return Vec::new() };
    let mut out = justified_defenses(&s.ao, &c.defenses(), terms);
    out.extend(justified_attacks(&s.ao, terms));
    out
}

pub fn s_pstep(s: &SState, m: &PMove) -> Result<SState, DialogueError> {
    let c = s.c.clone().ok_or_else(|| illegal(m.rule(), "it is the opponent's turn"))?;
    let mut next = SState { c: None, ..s.clone() };
    match m {
        PMove::Defend { formula, witness } => {
            check_defense(&s.ao, &c, formula, witness.as_ref())?;
            next.ap.insert(0, formula.clone());
        }
        PMove::Attack { target, kind } => {
            check_attack(&s.ao, target, kind)?;
            let a = m.attack().expect("attack move");
            if let Some(adm) = a.admission() {
                next.ap.insert(0, adm);
            }
            next.d.insert(0, (a, c));
        }
    }
    Ok(next)
}

pub fn s_ostep(s: &SState, om: &OMove) -> Result<SState, DialogueError> {
    if s.c.is_some() {
        return Err(illegal("OD", "it is the proponent's turn"));
    }
    let mut next = s.clone();
    match om {
        OMove::Defend { formula, witness } => {
            let (a, c) = s.d.first().ok_or_else(|| illegal("OD", "no deferred attack to answer"))?;
            if !a.defenses().contains(formula, witness.as_ref()) {
                return Err(illegal("OD", "the formula does not defend against the proponent's attack"));
            }
            next.d.remove(0);
            next.ao.insert(0, formula.clone());
            next.c = Some(c.clone());
        }
        OMove::Attack { index, target, kind } => {
            if s.ap.get(*index) != Some(target) {
                return Err(illegal(
                    "OA",
                    "not an open proponent admission; each admission may be attacked only once",
                ));
            }
            let c = Attack::new(kind.clone(), target.clone()).ok_or_else(|| illegal("OA", "not an attack on the admission"))?;
            next.ap.remove(*index);
            if let Some(adm) = c.admission() {
                next.ao.insert(0, adm);
            }
            next.c = Some(c);
        }
    }
    Ok(next)
}

pub fn s_omoves(s: &SState, terms: &[Term]) -> Vec<(OMove, SState)> {
    if s.c.is_some() {
        return Vec::new();
    }
    list_omoves(&s.ap, s.d.first().map(|(a, _)| a), terms)
        .into_iter()
        .map(|om| {
            let next = s_ostep(s, &om).expect("enumerated moves are legal");
            (om, next)
        })
        .collect()
}
