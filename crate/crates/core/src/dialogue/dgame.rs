//! D-dialogues: both players keep lists of open admissions and challenges.

use serde::{Deserialize, Serialize};

use super::egame::{check_attack, check_defense, justified_attacks, justified_defenses};
use super::moves::{illegal, DialogueError, OMove, PMove};
use super::rules::{attacks_of, Attack, DefenseSet};
use crate::syntax::{Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DState {
    pub ap: Vec<Formula>,
    pub cp: Vec<Attack>,
    pub ao: Vec<Formula>,
    pub co: Vec<Attack>,
}

pub fn d_open(attack: &Attack) -> DState {
    DState { ap: Vec::new(), cp: vec![attack.clone()], ao: attack.admission().into_iter().collect(), co: Vec::new() }
}

pub fn d_pmoves(s: &DState, terms: &[Term]) -> Vec<PMove> {
    let mut out = match s.cp.first() {
        Some(c) => justified_defenses(&s.ao, &c.defenses(), terms),
        None => Vec::new(),
    };
    out.extend(justified_attacks(&s.ao, terms));
    out
}

pub fn d_pstep(s: &DState, m: &PMove) -> Result<DState, DialogueError> {
    let mut next = s.clone();
    match m {
        PMove::Defend { formula, witness } => {
            let c = s.cp.first().ok_or_else(|| illegal("PD", "there is no open challenge against the proponent"))?;
            check_defense(&s.ao, c, formula, witness.as_ref())?;
            next.cp.remove(0);
            next.ap.insert(0, formula.clone());
        }
        PMove::Attack { target, kind } => {
            check_attack(&s.ao, target, kind)?;
            let a = m.attack().expect("attack move");
            if let Some(adm) = a.admission() {
                next.ap.insert(0, adm);
            }
            next.co.insert(0, a);
        }
    }
    Ok(next)
}

pub fn d_ostep(s: &DState, om: &OMove) -> Result<DState, DialogueError> {
    let mut next = s.clone();
    match om {
        OMove::Defend { formula, witness } => {
            let a = s.co.first().ok_or_else(|| illegal("OD", "there is no open challenge against the opponent"))?;
            if !a.defenses().contains(formula, witness.as_ref()) {
                return Err(illegal("OD", "the formula does not defend against the last open challenge"));
            }
            next.co.remove(0);
            next.ao.insert(0, formula.clone());
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
            next.cp.insert(0, c);
        }
    }
    Ok(next)
}

/// Opponent moves over the proponent's open admissions and her own open challenge.
pub(crate) fn list_omoves(ap: &[Formula], pending: Option<&Attack>, terms: &[Term]) -> Vec<OMove> {
    let mut out = Vec::new();
    if let Some(a) = pending {
        match a.defenses() {
            DefenseSet::FiniteSet(fs) => {
                for f in fs {
                    let om = OMove::Defend { formula: f, witness: None };
                    if !out.contains(&om) {
                        out.push(om);
                    }
                }
            }
            DefenseSet::TermIndexed(body) => {
                out.extend(terms.iter().map(|t| OMove::Defend { formula: body.inst(t), witness: Some(t.clone()) }))
            }
        }
    }
    for (i, phi) in ap.iter().enumerate() {
        if ap[..i].contains(phi) {
            continue;
        }
        for a in attacks_of(phi, terms) {
            out.push(OMove::Attack { index: i, target: phi.clone(), kind: a.kind });
        }
    }
    out
}

pub fn d_omoves(s: &DState, terms: &[Term]) -> Vec<(OMove, DState)> {
    list_omoves(&s.ap, s.co.first(), terms)
        .into_iter()
        .map(|om| {
            let next = d_ostep(s, &om).expect("enumerated moves are legal");
            (om, next)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dialogue::rules::AttackKind;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn defense_pops_the_head_challenge() {
        let s = d_open(&Attack::new(AttackKind::Impl, f("p -> p")).unwrap());
        let next = d_pstep(&s, &PMove::Defend { formula: f("p"), witness: None }).unwrap();
        assert_eq!(next, DState { ap: vec![f("p")], cp: vec![], ao: vec![f("p")], co: vec![] });
        assert!(d_omoves(&next, &[]).is_empty());
    }

    #[test]
    fn admissions_are_attacked_once() {
        let s = DState { ap: vec![f("q -> r")], cp: vec![], ao: vec![], co: vec![] };
        let om = OMove::Attack { index: 0, target: f("q -> r"), kind: AttackKind::Impl };
        let next = d_ostep(&s, &om).unwrap();
        assert!(next.ap.is_empty());
        assert_eq!(next.ao, vec![f("q")]);
        assert_eq!(next.cp[0].target, f("q -> r"));
        match d_ostep(&next, &om) {
            Err(DialogueError::Illegal { rule: "OA", message }) => assert!(message.contains("only once")),
            other => panic!("{other:?}"),
        }
    }
}
