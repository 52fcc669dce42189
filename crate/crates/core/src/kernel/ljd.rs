//! Premise shapes of the dialogue calculus.

use crate::dialogue::rules::{attack_families, defenses_of, AttackKind, DefenseSet};
use crate::syntax::{shift_ctx, Formula};

use super::derivation::Judgment;

fn cons(f: Formula, ctx: &[Formula]) -> Vec<Formula> {
    let mut out = Vec::with_capacity(ctx.len() + 1);
    out.push(f);
    out.extend_from_slice(ctx);
    out
}

/// Premises of an `R` step defending `phi`: one per attack family on `phi`,
/// answering it from the context extended by the attack's admission.
/// The `∀` family is uniform over a shifted context.
pub fn r_premises(ctx: &[Formula], phi: &Formula) -> Vec<Judgment> {
    attack_families(phi)
        .into_iter()
        .map(|fam| match (&fam.kind, phi) {
            (AttackKind::Term(_), Formula::All(body)) => {
                Judgment::LjdSeq { ctx: shift_ctx(ctx), goals: DefenseSet::single((**body).clone()) }
            }
            (kind, _) => {
                let ctx = match fam.admission {
                    Some(a) => cons(a, ctx),
                    None => ctx.to_vec(),
                };
                Judgment::LjdSeq { ctx, goals: defenses_of(kind, phi) }
            }
        })
        .collect()
}

/// Defense premises of an `L` step attacking `phi` with `kind` under goals `goals`.
/// The `∃` case is uniform over a shifted context.
pub fn l_defense_premises(ctx: &[Formula], phi: &Formula, kind: &AttackKind, goals: &DefenseSet) -> Vec<Judgment> {
    match defenses_of(kind, phi) {
        DefenseSet::FiniteSet(ds) => {
            ds.into_iter().map(|d| Judgment::LjdSeq { ctx: cons(d, ctx), goals: goals.clone() }).collect()
        }
        DefenseSet::TermIndexed(body) => {
            vec![Judgment::LjdSeq { ctx: cons(body, &shift_ctx(ctx)), goals: goals.shift() }]
        }
    }
}

/// All premises of an `L` step: the defenses, then the counter-attacks on the admission.
pub fn l_premises(ctx: &[Formula], phi: &Formula, kind: &AttackKind, goals: &DefenseSet) -> Vec<Judgment> {
    let mut out = l_defense_premises(ctx, phi, kind, goals);
    if let (AttackKind::Impl, Formula::Impl(adm, _)) = (kind, phi) {
        out.extend(r_premises(ctx, adm));
    }
    out
}

pub fn admission(phi: &Formula, kind: &AttackKind) -> Option<Formula> {
    match (kind, phi) {
        (AttackKind::Impl, Formula::Impl(a, _)) => Some((**a).clone()),
        _ => None,
    }
}
