use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::rules::{Attack, AttackKind};
use crate::kernel::KernelError;
use crate::syntax::{fresh_var, Formula, Term};

/// A proponent move: admit a defense of the current challenge, or attack
/// one of the opponent's admissions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PMove {
    Defend {
        formula: Formula,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<Term>,
    },
    Attack { target: Formula, kind: AttackKind },
}

impl PMove {
    pub fn rule(&self) -> &'static str {
        match self {
            PMove::Defend { .. } => "PD",
            PMove::Attack { .. } => "PA",
        }
    }

    pub fn attack(&self) -> Option<Attack> {
        match self {
            PMove::Attack { target, kind } => Some(Attack { kind: kind.clone(), target: target.clone() }),
            PMove::Defend { .. } => None,
        }
    }

    /// The formula the proponent admits by playing this move.
    pub fn admitted(&self) -> Option<Formula> {
        match self {
            PMove::Defend { formula, .. } => Some(formula.clone()),
            PMove::Attack { .. } => self.attack().and_then(|a| a.admission()),
        }
    }

    pub fn formulas(&self) -> Vec<Formula> {
        match self {
            PMove::Defend { formula, .. } => vec![formula.clone()],
            PMove::Attack { .. } => self.attack().map(|a| a.formulas()).unwrap_or_default(),
        }
    }
}

/// An opponent move. `Attack` names a proponent admission by position and
/// formula; in E-dialogues the position is always 0, the proponent's last
/// admission.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum OMove {
    Attack { index: usize, target: Formula, kind: AttackKind },
    Defend {
        formula: Formula,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<Term>,
    },
}

impl OMove {
    pub fn term(&self) -> Option<&Term> {
        match self {
            OMove::Attack { kind: AttackKind::Term(t), .. } => Some(t),
            OMove::Defend { witness, .. } => witness.as_ref(),
            OMove::Attack { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    E,
    D,
    S,
}

impl Variant {
    pub fn parse(s: &str) -> Option<Variant> {
        match s.to_ascii_lowercase().as_str() {
            "e" => Some(Variant::E),
            "d" => Some(Variant::D),
            "s" => Some(Variant::S),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum DialogueError {
    #[error("illegal move ({rule}): {message}")]
    Illegal { rule: &'static str, message: String },
    #[error("atomic formulas are not dialogue-valid candidates")]
    Atomic,
    #[error("no winning strategy within the term menu")]
    NoStrategy,
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("strategy does not cover the opponent response {0}")]
    Uncovered(String),
    #[error("goal set must be a single formula")]
    NotSingleton,
    #[error("expected a derivation ending in {0}")]
    WrongEnd(String),
    #[error("strategy interpreter invariant broken: {0}")]
    Internal(String),
    #[error("strategy fuel exhausted")]
    Fuel,
    #[error("bad term: {0}")]
    BadTerm(String),
    #[error("no legal move with id {0}")]
    UnknownMove(usize),
    #[error("the game is over")]
    Finished,
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

impl From<crate::kernel::CheckError> for DialogueError {
    fn from(e: crate::kernel::CheckError) -> Self {
        DialogueError::Kernel(KernelError::Check(e))
    }
}

pub(crate) fn illegal(rule: &'static str, message: impl Into<String>) -> DialogueError {
    DialogueError::Illegal { rule, message: message.into() }
}

/// A variable that the opponent can pick to stand for an arbitrary term.
pub fn fresh_term(items: &[Formula]) -> Term {
    Term::Var(fresh_var(items))
}

/// Terms a player may pick: the menu followed by `extra`, without repeats.
pub fn menu_with(menu: &[Term], extra: &[Term]) -> Vec<Term> {
    let mut out = menu.to_vec();
    for t in extra {
        if !out.contains(t) {
            out.push(t.clone());
        }
    }
    out
}

/// Subterms of `phi` that make sense at top level, then a constant not in `phi`.
pub fn default_menu(phi: &Formula) -> Vec<Term> {
    let mut out = Vec::new();
    phi.open_subterms(&mut out);
    let mut used = Vec::new();
    fn funcs(t: &Term, used: &mut Vec<String>) {
        if let Term::App(f, args) = t {
            used.push(f.as_str().to_string());
            args.iter().for_each(|a| funcs(a, used));
        }
    }
    out.iter().for_each(|t| funcs(t, &mut used));
    let name = (0..).map(|i| format!("k{i}")).find(|n| !used.contains(n)).expect("unbounded names");
    out.push(Term::constant(&name));
    out
}
