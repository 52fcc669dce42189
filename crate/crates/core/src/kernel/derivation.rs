use serde::{Deserialize, Serialize};

use crate::dialogue::rules::{AttackKind, DefenseSet};
use crate::syntax::{Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Calculus {
    Ndi,
    Ndc,
    Ljt,
    Lj,
    Ljd,
}

impl Calculus {
    pub fn parse(s: &str) -> Option<Calculus> {
        match s.to_ascii_lowercase().as_str() {
            "ndi" => Some(Calculus::Ndi),
            "ndc" => Some(Calculus::Ndc),
            "ljt" => Some(Calculus::Ljt),
            "lj" => Some(Calculus::Lj),
            "ljd" => Some(Calculus::Ljd),
            _ => None,
        }
    }

    pub fn is_nd(self) -> bool {
        matches!(self, Calculus::Ndi | Calculus::Ndc)
    }
}

/// Rule tags. Some names are shared between calculi (`C`, `E`, `P`, ...);
/// the calculus of the node decides which schema applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    A,
    C,
    W,
    P,
    E,
    II,
    IE,
    CI,
    CE1,
    CE2,
    DI1,
    DI2,
    DE,
    AI,
    AE,
    EI,
    EE,
    IL,
    IR,
    CL,
    CR,
    DL,
    DR1,
    DR2,
    AL,
    AR,
    EL,
    ER,
    R,
    L,
}

impl Rule {
    pub fn allowed_in(self, calc: Calculus) -> bool {
        use Rule::*;
        match calc {
            Calculus::Ndi => matches!(self, C | E | II | IE | CI | CE1 | CE2 | DI1 | DI2 | DE | AI | AE | EI | EE),
            Calculus::Ndc => matches!(self, C | E | II | IE | CI | CE1 | CE2 | DI1 | DI2 | DE | AI | AE | EI | EE | P),
            Calculus::Ljt => matches!(self, A | C | IL | IR | AL | AR | E),
            Calculus::Lj => {
                matches!(self, A | C | W | P | E | IL | IR | CL | CR | DL | DR1 | DR2 | AL | AR | EL | ER)
            }
            Calculus::Ljd => matches!(self, R | L),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Judgment {
    NdSeq { ctx: Vec<Formula>, goal: Formula },
    LjtSeq { ctx: Vec<Formula>, goal: Formula },
    LjtFocus { ctx: Vec<Formula>, focus: Formula, goal: Formula },
    LjSeq { ctx: Vec<Formula>, goal: Formula },
    LjdSeq { ctx: Vec<Formula>, goals: DefenseSet },
}

impl Judgment {
    pub fn ctx(&self) -> &[Formula] {
        match self {
            Judgment::NdSeq { ctx, .. }
            | Judgment::LjtSeq { ctx, .. }
            | Judgment::LjtFocus { ctx, .. }
            | Judgment::LjSeq { ctx, .. }
            | Judgment::LjdSeq { ctx, .. } => ctx,
        }
    }

    /// The single goal formula, when the judgment has one.
    pub fn goal(&self) -> Option<&Formula> {
        match self {
            Judgment::NdSeq { goal, .. }
            | Judgment::LjtSeq { goal, .. }
            | Judgment::LjtFocus { goal, .. }
            | Judgment::LjSeq { goal, .. } => Some(goal),
            Judgment::LjdSeq { .. } => None,
        }
    }

    pub fn with_ctx(&self, new: Vec<Formula>) -> Judgment {
        match self {
            Judgment::NdSeq { goal, .. } => Judgment::NdSeq { ctx: new, goal: goal.clone() },
            Judgment::LjtSeq { goal, .. } => Judgment::LjtSeq { ctx: new, goal: goal.clone() },
            Judgment::LjtFocus { focus, goal, .. } => {
                Judgment::LjtFocus { ctx: new, focus: focus.clone(), goal: goal.clone() }
            }
            Judgment::LjSeq { goal, .. } => Judgment::LjSeq { ctx: new, goal: goal.clone() },
            Judgment::LjdSeq { goals, .. } => Judgment::LjdSeq { ctx: new, goals: goals.clone() },
        }
    }

    pub fn subst(&self, sigma: &crate::syntax::Subst) -> Judgment {
        let ctx = crate::syntax::subst_ctx(self.ctx(), sigma);
        match self {
            Judgment::NdSeq { goal, .. } => Judgment::NdSeq { ctx, goal: goal.subst(sigma) },
            Judgment::LjtSeq { goal, .. } => Judgment::LjtSeq { ctx, goal: goal.subst(sigma) },
            Judgment::LjtFocus { focus, goal, .. } => {
                Judgment::LjtFocus { ctx, focus: focus.subst(sigma), goal: goal.subst(sigma) }
            }
            Judgment::LjSeq { goal, .. } => Judgment::LjSeq { ctx, goal: goal.subst(sigma) },
            Judgment::LjdSeq { goals, .. } => Judgment::LjdSeq { ctx, goals: goals.subst(sigma) },
        }
    }

    pub fn formulas(&self) -> Vec<Formula> {
        let mut out = self.ctx().to_vec();
        match self {
            Judgment::LjtFocus { focus, goal, .. } => {
                out.push(focus.clone());
                out.push(goal.clone());
            }
            Judgment::LjdSeq { goals, .. } => out.extend(goals.formulas()),
            _ => out.push(self.goal().expect("single goal").clone()),
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub term: Option<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<Formula>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attack: Option<AttackKind>,
}

impl RuleData {
    pub fn none() -> RuleData {
        RuleData::default()
    }

    pub fn index(i: usize) -> RuleData {
        RuleData { index: Some(i), ..Default::default() }
    }

    pub fn term(t: Term) -> RuleData {
        RuleData { term: Some(t), ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Derivation {
    pub calc: Calculus,
    pub rule: Rule,
    #[serde(default)]
    pub data: RuleData,
    #[serde(default)]
    pub premises: Vec<Derivation>,
    pub end: Judgment,
}

impl Derivation {
    pub fn new(calc: Calculus, rule: Rule, data: RuleData, premises: Vec<Derivation>, end: Judgment) -> Derivation {
        Derivation { calc, rule, data, premises, end }
    }

    pub fn ctx(&self) -> &[Formula] {
        self.end.ctx()
    }

    pub fn goal(&self) -> &Formula {
        self.end.goal().expect("judgment with a single goal")
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Derivation::height).max().unwrap_or(0)
    }

    pub fn count_rule(&self, rule: Rule) -> usize {
        (self.rule == rule) as usize + self.premises.iter().map(|p| p.count_rule(rule)).sum::<usize>()
    }

    /// Retag an intuitionistic natural deduction tree as classical.
    pub fn to_classical(&self) -> Derivation {
        let mut d = self.clone();
        fn go(d: &mut Derivation) {
            if d.calc == Calculus::Ndi {
                d.calc = Calculus::Ndc;
            }
            d.premises.iter_mut().for_each(go);
        }
        go(&mut d);
        d
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("derivations serialize")
    }
}
