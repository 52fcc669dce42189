//! The local rules: which attacks a formula admits, what an attack
//! concedes, and which formulas defend against it.

use serde::{Deserialize, Serialize};

use crate::syntax::{Formula, Subst, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackKind {
    Or,
    Impl,
    Left,
    Right,
    Term(Term),
    Bot,
    Ex,
}

impl AttackKind {
    pub fn name(&self) -> &'static str {
        match self {
            AttackKind::Or => "AOr",
            AttackKind::Impl => "AImplAdmit",
            AttackKind::Left => "ALeft",
            AttackKind::Right => "ARight",
            AttackKind::Term(_) => "ATerm",
            AttackKind::Bot => "ABot",
            AttackKind::Ex => "AEx",
        }
    }

    pub fn subst(&self, sigma: &Subst) -> AttackKind {
        match self {
            AttackKind::Term(t) => AttackKind::Term(t.subst(sigma)),
            k => k.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Attack {
    pub kind: AttackKind,
    pub target: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefenseSet {
    FiniteSet(Vec<Formula>),
    /// `{ body[t] | t }`
    TermIndexed(Formula),
}

impl DefenseSet {
    pub fn single(f: Formula) -> DefenseSet {
        DefenseSet::FiniteSet(vec![f])
    }

    pub fn empty() -> DefenseSet {
        DefenseSet::FiniteSet(Vec::new())
    }

    pub fn subst(&self, sigma: &Subst) -> DefenseSet {
        match self {
            DefenseSet::FiniteSet(fs) => DefenseSet::FiniteSet(fs.iter().map(|f| f.subst(sigma)).collect()),
            DefenseSet::TermIndexed(b) => DefenseSet::TermIndexed(b.subst(&sigma.up())),
        }
    }

    pub fn shift(&self) -> DefenseSet {
        self.subst(&Subst::shift())
    }

    /// Membership; term-indexed sets need the witness.
    pub fn contains(&self, phi: &Formula, witness: Option<&Term>) -> bool {
        match (self, witness) {
            (DefenseSet::FiniteSet(fs), _) => fs.contains(phi),
            (DefenseSet::TermIndexed(b), Some(t)) => b.inst(t) == *phi,
            (DefenseSet::TermIndexed(_), None) => false,
        }
    }

    /// A witness `t` with `body[t] = phi`, if any.
    pub fn find_witness(&self, phi: &Formula) -> Option<Term> {
        match self {
            DefenseSet::FiniteSet(_) => None,
            DefenseSet::TermIndexed(b) => match_instance(b, phi),
        }
    }

    /// Formulas to take into account when picking fresh variables.
    pub fn formulas(&self) -> Vec<Formula> {
        match self {
            DefenseSet::FiniteSet(fs) => fs.clone(),
            DefenseSet::TermIndexed(b) => vec![Formula::ex(b.clone())],
        }
    }

    pub fn is_subset_of(&self, other: &DefenseSet) -> bool {
        match (self, other) {
            (DefenseSet::FiniteSet(a), _) => a.iter().all(|f| match other {
                DefenseSet::FiniteSet(b) => b.contains(f),
                DefenseSet::TermIndexed(_) => other.find_witness(f).is_some(),
            }),
            (DefenseSet::TermIndexed(a), DefenseSet::TermIndexed(b)) => a == b,
            (DefenseSet::TermIndexed(_), DefenseSet::FiniteSet(_)) => false,
        }
    }
}

/// Solves `body[t ; id] = target` for `t`.
pub fn match_instance(body: &Formula, target: &Formula) -> Option<Term> {
    let mut found: Option<Term> = None;
    if !collect_match(body, target, 0, &mut found) {
        return None;
    }
    let t = found.unwrap_or(Term::Var(0));
    (body.inst(&t) == *target).then_some(t)
}

fn collect_match(b: &Formula, t: &Formula, depth: usize, found: &mut Option<Term>) -> bool {
    match (b, t) {
        (Formula::Bot, Formula::Bot) => true,
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| collect_term(x, y, depth, found))
        }
        (Formula::Impl(a, b), Formula::Impl(c, d))
        | (Formula::Conj(a, b), Formula::Conj(c, d))
        | (Formula::Disj(a, b), Formula::Disj(c, d)) => {
            collect_match(a, c, depth, found) && collect_match(b, d, depth, found)
        }
        (Formula::All(a), Formula::All(c)) | (Formula::Ex(a), Formula::Ex(c)) => collect_match(a, c, depth + 1, found),
        _ => false,
    }
}

fn collect_term(b: &Term, t: &Term, depth: usize, found: &mut Option<Term>) -> bool {
    match b {
        Term::Var(x) if *x == depth => {
            if found.is_none() {
                // Bring the candidate out from under `depth` binders.
                let fv = t.free_vars();
                if fv.iter().any(|&y| y < depth) {
                    return false;
                }
                *found = Some(t.subst(&Subst::new(vec![Term::Var(0); depth], 0)));
            }
            true
        }
        Term::Var(_) => true,
        Term::App(f, xs) => match t {
            Term::App(g, ys) if f == g && xs.len() == ys.len() => {
                xs.iter().zip(ys).all(|(x, y)| collect_term(x, y, depth, found))
            }
            _ => false,
        },
    }
}

/// One family of attacks against a formula. `Term` families stand for every term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackFamily {
    pub kind: AttackKind,
    pub admission: Option<Formula>,
}

/// Attack families in premise order: `⊥`, `→`, `∧` (left, right), `∨`, `∀`, `∃`.
/// The `∀` family carries `Term(Var 0)` as a placeholder.
pub fn attack_families(phi: &Formula) -> Vec<AttackFamily> {
    match phi {
        Formula::Atom(..) => Vec::new(),
        Formula::Bot => vec![AttackFamily { kind: AttackKind::Bot, admission: None }],
        Formula::Impl(a, _) => vec![AttackFamily { kind: AttackKind::Impl, admission: Some((**a).clone()) }],
        Formula::Conj(..) => vec![
            AttackFamily { kind: AttackKind::Left, admission: None },
            AttackFamily { kind: AttackKind::Right, admission: None },
        ],
        Formula::Disj(..) => vec![AttackFamily { kind: AttackKind::Or, admission: None }],
        Formula::All(_) => vec![AttackFamily { kind: AttackKind::Term(Term::Var(0)), admission: None }],
        Formula::Ex(_) => vec![AttackFamily { kind: AttackKind::Ex, admission: None }],
    }
}

/// Index of the family an attack belongs to.
pub fn family_index(phi: &Formula, kind: &AttackKind) -> Option<usize> {
    match (phi, kind) {
        (Formula::Bot, AttackKind::Bot)
        | (Formula::Impl(..), AttackKind::Impl)
        | (Formula::Conj(..), AttackKind::Left)
        | (Formula::Disj(..), AttackKind::Or)
        | (Formula::All(_), AttackKind::Term(_))
        | (Formula::Ex(_), AttackKind::Ex) => Some(0),
        (Formula::Conj(..), AttackKind::Right) => Some(1),
        _ => None,
    }
}

pub fn is_attack_on(phi: &Formula, kind: &AttackKind) -> bool {
    family_index(phi, kind).is_some()
}

/// Attacks on `phi`, with `∀` instantiated at each term of `menu`.
pub fn attacks_of(phi: &Formula, menu: &[Term]) -> Vec<Attack> {
    let mut out = Vec::new();
    for fam in attack_families(phi) {
        match fam.kind {
            AttackKind::Term(_) => {
                out.extend(menu.iter().map(|t| Attack { kind: AttackKind::Term(t.clone()), target: phi.clone() }))
            }
            k => out.push(Attack { kind: k, target: phi.clone() }),
        }
    }
    out
}

impl Attack {
    pub fn new(kind: AttackKind, target: Formula) -> Option<Attack> {
        is_attack_on(&target, &kind).then_some(Attack { kind, target })
    }

    pub fn admission(&self) -> Option<Formula> {
        match (&self.kind, &self.target) {
            (AttackKind::Impl, Formula::Impl(a, _)) => Some((**a).clone()),
            _ => None,
        }
    }

    pub fn defenses(&self) -> DefenseSet {
        defenses_of(&self.kind, &self.target)
    }

    pub fn subst(&self, sigma: &Subst) -> Attack {
        Attack { kind: self.kind.subst(sigma), target: self.target.subst(sigma) }
    }

    /// Formulas mentioned by the attack, for freshness bookkeeping.
    pub fn formulas(&self) -> Vec<Formula> {
        let mut out = vec![self.target.clone()];
        out.extend(self.defenses().formulas());
        out
    }
}

pub fn defenses_of(kind: &AttackKind, target: &Formula) -> DefenseSet {
    match (kind, target) {
        (AttackKind::Or, Formula::Disj(a, b)) => DefenseSet::FiniteSet(vec![(**a).clone(), (**b).clone()]),
        (AttackKind::Impl, Formula::Impl(_, b)) => DefenseSet::single((**b).clone()),
        (AttackKind::Left, Formula::Conj(a, _)) => DefenseSet::single((**a).clone()),
        (AttackKind::Right, Formula::Conj(_, b)) => DefenseSet::single((**b).clone()),
        (AttackKind::Term(t), Formula::All(a)) => DefenseSet::single(a.inst(t)),
        (AttackKind::Ex, Formula::Ex(a)) => DefenseSet::TermIndexed((**a).clone()),
        _ => DefenseSet::empty(),
    }
}

/// Atomic admissions must already have been conceded by the opponent.
pub fn justified(opp: &[Formula], phi: &Formula) -> bool {
    !phi.is_atomic() || opp.contains(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table() {
        let (p, q) = (Formula::prop("p"), Formula::prop("q"));
        let imp = Formula::imp(p.clone(), q.clone());
        let a = attacks_of(&imp, &[]);
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].admission(), Some(p.clone()));
        assert_eq!(a[0].defenses(), DefenseSet::single(q.clone()));
        assert!(attacks_of(&p, &[Term::Var(0)]).is_empty());
        assert_eq!(defenses_of(&AttackKind::Bot, &Formula::Bot), DefenseSet::empty());
        let or = Formula::disj(p.clone(), q.clone());
        assert_eq!(attacks_of(&or, &[])[0].defenses(), DefenseSet::FiniteSet(vec![p.clone(), q]));
        assert!(justified(std::slice::from_ref(&p), &p));
        assert!(!justified(&[], &p));
        assert!(justified(&[], &Formula::Bot));
    }

    #[test]
    fn matching() {
        let body = Formula::all(Formula::atom("P", vec![Term::Var(1), Term::Var(0), Term::Var(2)]));
        let t = Term::app("f", vec![Term::Var(4)]);
        let target = body.inst(&t);
        assert_eq!(match_instance(&body, &target), Some(t));
        let closed = Formula::prop("p");
        assert_eq!(match_instance(&closed, &closed), Some(Term::Var(0)));
        assert_eq!(match_instance(&closed, &Formula::prop("q")), None);
    }
}
