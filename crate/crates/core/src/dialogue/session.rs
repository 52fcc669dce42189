//! Interactive play: a human opponent against a derivation-driven proponent.

use serde::{Deserialize, Serialize};

use super::dgame::{d_open, d_ostep, d_pstep, DState};
use super::egame::{e_open, e_ostep, e_pmove_legal, EState};
use super::interp::{DInterp, EInterp, SInterp};
use super::ljd::ljd_from_lj;
use super::moves::{default_menu, illegal, DialogueError, OMove, PMove, Variant};
use super::rules::{attack_families, is_attack_on, Attack, AttackKind, DefenseSet};
use super::search::{d_win_search, e_win_search, ljd_from_dwin, ljd_from_estrategy, root_formula, GameBudget};
use super::sgame::{s_open, s_ostep, s_pstep, SState};
use crate::kernel::{check, ljt_to_lj, Calculus, Derivation, Judgment};
use crate::syntax::{parse_term, print_formula, Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mover {
    Opponent,
    Proponent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Open,
    ProponentWon,
}

/// Position of a session. `E` carries the proponent's last move, which is
/// what the opponent responds to; it is `None` while the proponent is to move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "phase", rename_all = "snake_case")]
pub enum SessionState {
    Opening,
    E { state: EState, last: Option<PMove> },
    D { state: DState },
    S { state: SState },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Move {
    Opponent(OMove),
    Proponent(PMove),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Turn {
    pub mover: Mover,
    pub rule: String,
    #[serde(rename = "move")]
    pub mv: Move,
    pub state: SessionState,
}

/// An opponent move offered to the client. With `needs_term` the move is a
/// template: the `∀` attack term or the `∃` witness is supplied on submission.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegalMove {
    pub id: usize,
    pub rule: String,
    #[serde(rename = "move")]
    pub mv: OMove,
    pub needs_term: bool,
    pub label: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Proof,
    Search,
}

#[derive(Clone, Debug, Serialize)]
pub struct EngineState {
    pub source: Source,
    /// The sequent the engine will answer from, when it is the proponent's turn.
    pub current: Option<Judgment>,
    pub families: usize,
    pub deferrals: usize,
}

#[derive(Clone, Debug)]
enum Engine {
    E(EInterp),
    S(SInterp),
    D(DInterp),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GameSession {
    pub id: String,
    pub variant: Variant,
    pub formula: Formula,
    pub term_menu: Vec<Term>,
    pub source: Source,
    /// `[] ⊢D {φ}`, the derivation the engine plays from.
    pub proof: Derivation,
    pub state: SessionState,
    pub history: Vec<Turn>,
    pub status: Status,
    #[serde(skip)]
    engine: Option<Engine>,
}

fn ljd_for(phi: &Formula, proof: &Derivation) -> Result<Derivation, DialogueError> {
    check(proof)?;
    let d = match proof.calc {
        Calculus::Ljd => proof.clone(),
        Calculus::Lj => ljd_from_lj(proof)?,
        Calculus::Ljt => ljd_from_lj(&ljt_to_lj(proof)?)?,
        _ => return Err(DialogueError::WrongEnd("an LJ or LJD derivation".into())),
    };
    if root_formula(&d)? != *phi {
        return Err(DialogueError::WrongEnd(format!("[] ⊢ {}", print_formula(phi))));
    }
    Ok(d)
}

fn rule_of_omove(state: &SessionState, om: &OMove) -> &'static str {
    match (state, om) {
        (SessionState::Opening, _) => "open",
        (_, OMove::Defend { .. }) => "OD",
        (SessionState::E { last: Some(PMove::Attack { .. }), .. }, OMove::Attack { .. }) => "OC",
        _ => "OA",
    }
}

/// Applies an opponent move to a session position.
pub fn apply_opponent(variant: Variant, phi: &Formula, state: &SessionState, om: &OMove) -> Result<SessionState, DialogueError> {
    Ok(match state {
        SessionState::Opening => {
            let OMove::Attack { index: 0, target, kind } = om else {
                return Err(illegal("open", "the opponent opens by attacking the formula"));
            };
            if target != phi || !is_attack_on(phi, kind) {
                return Err(illegal("open", "not an attack on the formula"));
            }
            let a = Attack { kind: kind.clone(), target: target.clone() };
            match variant {
                Variant::E => SessionState::E { state: e_open(&a), last: None },
                Variant::D => SessionState::D { state: d_open(&a) },
                Variant::S => SessionState::S { state: s_open(&a) },
            }
        }
        SessionState::E { state, last: Some(m) } => SessionState::E { state: e_ostep(state, m, om)?, last: None },
        SessionState::E { last: None, .. } => return Err(illegal("OA", "it is the proponent's turn")),
        SessionState::D { state } => SessionState::D { state: d_ostep(state, om)? },
        SessionState::S { state } => SessionState::S { state: s_ostep(state, om)? },
    })
}

pub fn apply_proponent(state: &SessionState, m: &PMove) -> Result<SessionState, DialogueError> {
    Ok(match state {
        SessionState::E { state, last: None } => {
            e_pmove_legal(state, m)?;
            SessionState::E { state: state.clone(), last: Some(m.clone()) }
        }
        SessionState::D { state } => SessionState::D { state: d_pstep(state, m)? },
        SessionState::S { state } => SessionState::S { state: s_pstep(state, m)? },
        _ => return Err(illegal(m.rule(), "it is the opponent's turn")),
    })
}

/// Folds a history over the transition rules, checking every recorded state.
pub fn replay(variant: Variant, phi: &Formula, history: &[Turn]) -> Result<SessionState, DialogueError> {
    let mut state = SessionState::Opening;
    for (i, t) in history.iter().enumerate() {
        state = match &t.mv {
            Move::Opponent(om) => apply_opponent(variant, phi, &state, om)?,
            Move::Proponent(m) => apply_proponent(&state, m)?,
        };
        if state != t.state {
            return Err(DialogueError::Internal(format!("history entry {i} records a different state")));
        }
    }
    Ok(state)
}

struct Template {
    rule: &'static str,
    mv: OMove,
    needs_term: bool,
}

fn templates(phi: &Formula, state: &SessionState) -> Vec<Template> {
    let (attackable, pending, attack_rule): (Vec<(usize, Formula)>, Option<Attack>, &'static str) = match state {
        SessionState::Opening => (vec![(0, phi.clone())], None, "open"),
        SessionState::E { last: None, .. } => return Vec::new(),
        SessionState::E { last: Some(m), .. } => {
            let rule = if m.attack().is_some() { "OC" } else { "OA" };
            (m.admitted().into_iter().map(|f| (0, f)).collect(), m.attack(), rule)
        }
        SessionState::D { state } => (firsts(&state.ap), state.co.first().cloned(), "OA"),
        SessionState::S { state } if state.c.is_none() => (firsts(&state.ap), state.d.first().map(|(a, _)| a.clone()), "OA"),
        SessionState::S { .. } => return Vec::new(),
    };
    let mut out: Vec<Template> = Vec::new();
    if let Some(a) = pending {
        match a.defenses() {
            DefenseSet::FiniteSet(fs) => {
                for f in fs {
                    let mv = OMove::Defend { formula: f, witness: None };
                    if !out.iter().any(|t| t.mv == mv) {
                        out.push(Template { rule: "OD", mv, needs_term: false });
                    }
                }
            }
            DefenseSet::TermIndexed(body) => {
                out.push(Template { rule: "OD", mv: OMove::Defend { formula: body, witness: None }, needs_term: true })
            }
        }
    }
    for (index, f) in attackable {
        for fam in attack_families(&f) {
            let needs_term = matches!(fam.kind, AttackKind::Term(_));
            out.push(Template { rule: attack_rule, mv: OMove::Attack { index, target: f.clone(), kind: fam.kind }, needs_term });
        }
    }
    out
}

fn firsts(ap: &[Formula]) -> Vec<(usize, Formula)> {
    ap.iter().enumerate().filter(|(i, f)| !ap[..*i].contains(f)).map(|(i, f)| (i, f.clone())).collect()
}

fn label(t: &Template) -> String {
    match &t.mv {
        OMove::Attack { target, kind, .. } => {
            let k = if t.needs_term { "ATerm(t)".to_string() } else { kind.name().to_string() };
            format!("{}: {k} on {}", t.rule, print_formula(target))
        }
        OMove::Defend { formula, .. } if t.needs_term => format!("OD: admit {} at a term t", print_formula(&Formula::ex(formula.clone()))),
        OMove::Defend { formula, .. } => format!("OD: admit {}", print_formula(formula)),
    }
}

impl GameSession {
    /// Starts a game. Without a proof the engine searches for a strategy over
    /// `term_menu` (or the default menu) and refuses if none is found.
    pub fn new(
        id: impl Into<String>,
        variant: Variant,
        formula: Formula,
        proof: Option<&Derivation>,
        term_menu: Option<Vec<Term>>,
    ) -> Result<GameSession, DialogueError> {
        if formula.is_atomic() {
            return Err(DialogueError::Atomic);
        }
        let term_menu = term_menu.unwrap_or_else(|| default_menu(&formula));
        let (source, proof) = match proof {
            Some(p) => (Source::Proof, ljd_for(&formula, p)?),
            None => {
                let budget = GameBudget::default();
                let d = match variant {
                    Variant::D => ljd_from_dwin(&d_win_search(&formula, &budget, &term_menu)?)?,
                    _ => ljd_from_estrategy(&e_win_search(&formula, &budget, &term_menu)?)?,
                };
                (Source::Search, d)
            }
        };
        Ok(GameSession {
            id: id.into(),
            variant,
            formula,
            term_menu,
            source,
            proof,
            state: SessionState::Opening,
            history: Vec::new(),
            status: Status::Open,
            engine: None,
        })
    }

    pub fn legal_opponent_moves(&self) -> Vec<LegalMove> {
        if self.status == Status::ProponentWon {
            return Vec::new();
        }
        templates(&self.formula, &self.state)
            .into_iter()
            .enumerate()
            .map(|(id, t)| LegalMove { id, rule: t.rule.to_string(), label: label(&t), mv: t.mv, needs_term: t.needs_term })
            .collect()
    }

    /// Plays legal move `id`, parsing `term` for moves that need one.
    pub fn play(&mut self, id: usize, term: Option<&str>) -> Result<Vec<Turn>, DialogueError> {
        let t = self.legal_opponent_moves().into_iter().nth(id).ok_or(DialogueError::UnknownMove(id))?;
        let om = if t.needs_term {
            let text = term.ok_or_else(|| DialogueError::BadTerm("this move needs a term".into()))?;
            let term = parse_term(text).map_err(|e| DialogueError::BadTerm(e.to_string()))?;
            match t.mv {
                OMove::Attack { index, target, .. } => OMove::Attack { index, target, kind: AttackKind::Term(term) },
                OMove::Defend { formula, .. } => OMove::Defend { formula: formula.inst(&term), witness: Some(term) },
            }
        } else {
            t.mv
        };
        self.opponent_move(&om)
    }

    /// Applies an opponent move and the engine's immediate reply. Returns the new turns.
    pub fn opponent_move(&mut self, om: &OMove) -> Result<Vec<Turn>, DialogueError> {
        if self.status == Status::ProponentWon {
            return Err(DialogueError::Finished);
        }
        let rule = rule_of_omove(&self.state, om);
        let next = apply_opponent(self.variant, &self.formula, &self.state, om)?;
        let mut engine = match (&self.engine, &self.state) {
            (None, SessionState::Opening) => {
                let OMove::Attack { target, kind, .. } = om else { unreachable!("checked opening") };
                let a = Attack { kind: kind.clone(), target: target.clone() };
                match self.variant {
                    Variant::E => Engine::E(EInterp::open(&self.proof, &a)?),
                    Variant::S => Engine::S(SInterp::open(&self.proof, &a)?),
                    Variant::D => Engine::D(DInterp::open(&self.proof, &a)?),
                }
            }
            (Some(e), _) => e.clone(),
            (None, _) => return Err(DialogueError::Internal("engine missing; rebuild the session from its history".into())),
        };
        match (&mut engine, &self.state) {
            (Engine::E(e), SessionState::E { .. }) => *e = e.respond(om)?,
            (Engine::S(s), SessionState::S { .. }) => s.respond(om)?,
            (Engine::D(d), SessionState::D { state }) => d.respond(state, om)?,
            _ => {}
        }
        let reply = match (&mut engine, &next) {
            (Engine::E(e), _) => e.choose()?,
            (Engine::S(s), _) => s.choose()?,
            (Engine::D(d), SessionState::D { state }) => d.choose(state)?,
            _ => return Err(DialogueError::Internal("engine and position disagree".into())),
        };
        let after = apply_proponent(&next, &reply)
            .map_err(|e| DialogueError::Internal(format!("engine played an illegal move: {e}")))?;
        let turns = vec![
            Turn { mover: Mover::Opponent, rule: rule.to_string(), mv: Move::Opponent(om.clone()), state: next },
            Turn { mover: Mover::Proponent, rule: reply.rule().to_string(), mv: Move::Proponent(reply), state: after.clone() },
        ];
        self.history.extend(turns.iter().cloned());
        self.state = after;
        self.engine = Some(engine);
        if templates(&self.formula, &self.state).is_empty() {
            self.status = Status::ProponentWon;
        }
        Ok(turns)
    }

    pub fn engine_state(&self) -> EngineState {
        let (current, families, deferrals) = match &self.engine {
            None => (None, 0, 0),
            Some(Engine::E(e)) => (Some(e.current().end.clone()), 0, 0),
            Some(Engine::S(s)) => (s.current().map(|d| d.end.clone()), s.families(), s.deferrals()),
            Some(Engine::D(d)) => (d.inner().current().map(|d| d.end.clone()), d.inner().families(), d.inner().deferrals()),
        };
        EngineState { source: self.source, current, families, deferrals }
    }

    /// Recomputes a session from its proof and the opponent moves in its
    /// history; fails unless every recorded turn is reproduced.
    pub fn rebuild(&self) -> Result<GameSession, DialogueError> {
        let mut fresh = GameSession {
            history: Vec::new(),
            state: SessionState::Opening,
            status: Status::Open,
            engine: None,
            ..self.clone()
        };
        check(&fresh.proof)?;
        for t in &self.history {
            if let Move::Opponent(om) = &t.mv {
                fresh.opponent_move(om)?;
            }
        }
        if fresh.history != self.history {
            return Err(DialogueError::Internal("replayed history differs from the record".into()));
        }
        Ok(fresh)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn bot_implies_p() {
        let phi = parse_formula("false -> P").unwrap();
        let mut g = GameSession::new("g", Variant::E, phi, None, None).unwrap();
        let moves = g.legal_opponent_moves();
        assert_eq!(moves.len(), 1);
        let turns = g.play(moves[0].id, None).unwrap();
        assert_eq!(turns[1].mv, Move::Proponent(PMove::Attack { target: Formula::Bot, kind: AttackKind::Bot }));
        assert_eq!(g.status, Status::ProponentWon);
        assert!(matches!(g.play(0, None), Err(DialogueError::UnknownMove(0))));
        assert!(matches!(g.opponent_move(&moves[0].mv), Err(DialogueError::Finished)));
        assert_eq!(replay(g.variant, &g.formula, &g.history).unwrap(), g.state);
    }

    #[test]
    fn term_slots() {
        let phi = parse_formula("forall x. P(x) -> P(x)").unwrap();
        let mut g = GameSession::new("g", Variant::S, phi, None, None).unwrap();
        let moves = g.legal_opponent_moves();
        assert!(moves[0].needs_term);
        assert!(matches!(g.play(0, None), Err(DialogueError::BadTerm(_))));
        assert!(matches!(g.play(0, Some("f(")), Err(DialogueError::BadTerm(_))));
        g.play(0, Some("f(c)")).unwrap();
        let pfc = parse_formula("P(f(c))").unwrap();
        let open = g.legal_opponent_moves();
        assert_eq!(open.len(), 1);
        g.play(0, None).unwrap();
        assert_eq!(g.history[3].mv, Move::Proponent(PMove::Defend { formula: pfc, witness: None }));
        assert_eq!(g.status, Status::ProponentWon);
        let rebuilt = g.rebuild().unwrap();
        assert_eq!(rebuilt.state, g.state);
    }
}
