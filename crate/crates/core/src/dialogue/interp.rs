//! Strategies read off dialogue-calculus derivations. The interpreters keep
//! just enough of the derivation to answer every opponent move.

use super::ljd::{l_admission, l_counter_premises, l_premise_for, r_premise_for};
use super::moves::{DialogueError, OMove, PMove};
use super::rules::Attack;
use super::sgame::{s_open, s_ostep, s_pstep, SState};
use super::dgame::DState;
use crate::kernel::{Derivation, Rule};
use crate::syntax::Formula;

/// Proponent moves an interpreter may make before it gives up.
pub const DEFAULT_FUEL: usize = 100_000;

fn uncovered(om: &OMove) -> DialogueError {
    DialogueError::Uncovered(format!("{om:?}"))
}

fn node_move(d: &Derivation) -> Result<PMove, DialogueError> {
    let formula = d.data.formula.clone().ok_or_else(|| DialogueError::Internal("LJD node without a formula".into()))?;
    match d.rule {
        Rule::R => Ok(PMove::Defend { formula, witness: d.data.term.clone() }),
        Rule::L => {
            let kind = d.data.attack.clone().ok_or_else(|| DialogueError::Internal("L node without an attack".into()))?;
            Ok(PMove::Attack { target: formula, kind })
        }
        r => Err(DialogueError::Internal(format!("{r:?} is not a dialogue rule"))),
    }
}

/// The premise answering the opening `a` on the root `[] ⊢D {φ}`.
fn opening_premise(root: &Derivation, a: &Attack) -> Result<Derivation, DialogueError> {
    if root.rule != Rule::R || root.data.formula.as_ref() != Some(&a.target) {
        return Err(DialogueError::WrongEnd(format!("an R step on {:?}", a.target)));
    }
    r_premise_for(&root.premises, &a.target, &a.kind).ok_or_else(|| DialogueError::Uncovered(format!("{a:?}")))
}

/// E-strategy: the current derivation always proves `Γ ⊢D ⟦c⟧` for some `Γ ⊆ A_o`.
#[derive(Clone, Debug)]
pub struct EInterp {
    current: Derivation,
}

impl EInterp {
    pub fn open(root: &Derivation, a: &Attack) -> Result<EInterp, DialogueError> {
        Ok(EInterp { current: opening_premise(root, a)? })
    }

    pub fn current(&self) -> &Derivation {
        &self.current
    }

    pub fn choose(&self) -> Result<PMove, DialogueError> {
        node_move(&self.current)
    }

    pub fn respond(&self, om: &OMove) -> Result<EInterp, DialogueError> {
        let d = &self.current;
        let next = match (d.rule, om) {
            (Rule::R, OMove::Attack { target, kind, .. }) if d.data.formula.as_ref() == Some(target) => {
                r_premise_for(&d.premises, target, kind)
            }
            (Rule::L, OMove::Defend { formula, witness }) => l_premise_for(d, formula, witness.as_ref()),
            (Rule::L, OMove::Attack { target, kind, .. }) if l_admission(d).as_ref() == Some(target) => {
                r_premise_for(l_counter_premises(d), target, kind)
            }
            _ => None,
        };
        next.map(|current| EInterp { current }).ok_or_else(|| uncovered(om))
    }
}

/// S-strategy. `ap` runs parallel to the proponent's admissions and holds the
/// premises that answer attacks on each; `d` runs parallel to the deferred
/// attacks and holds the `L` steps that made them.
#[derive(Clone, Debug)]
pub struct SInterp {
    ap: Vec<(Formula, Vec<Derivation>)>,
    d: Vec<Derivation>,
    current: Option<Derivation>,
    fuel: usize,
}

impl SInterp {
    pub fn open(root: &Derivation, a: &Attack) -> Result<SInterp, DialogueError> {
        Ok(SInterp { ap: Vec::new(), d: Vec::new(), current: Some(opening_premise(root, a)?), fuel: DEFAULT_FUEL })
    }

    pub fn with_fuel(mut self, fuel: usize) -> SInterp {
        self.fuel = fuel;
        self
    }

    /// The derivation answering the current challenge, while the proponent is to move.
    pub fn current(&self) -> Option<&Derivation> {
        self.current.as_ref()
    }

    pub fn families(&self) -> usize {
        self.ap.len()
    }

    pub fn deferrals(&self) -> usize {
        self.d.len()
    }

    pub fn choose(&mut self) -> Result<PMove, DialogueError> {
        if self.fuel == 0 {
            return Err(DialogueError::Fuel);
        }
        let d = self.current.take().ok_or_else(|| DialogueError::Internal("not the proponent's turn".into()))?;
        let m = node_move(&d)?;
        self.fuel -= 1;
        match &m {
            PMove::Defend { formula, .. } => self.ap.insert(0, (formula.clone(), d.premises)),
            PMove::Attack { .. } => {
                if let Some(adm) = l_admission(&d) {
                    self.ap.insert(0, (adm, l_counter_premises(&d).to_vec()));
                }
                self.d.insert(0, d);
            }
        }
        Ok(m)
    }

    pub fn respond(&mut self, om: &OMove) -> Result<(), DialogueError> {
        if self.current.is_some() {
            return Err(DialogueError::Internal("not the opponent's turn".into()));
        }
        let next = match om {
            OMove::Defend { formula, witness } => {
                let l = self.d.first().ok_or_else(|| uncovered(om))?;
                let next = l_premise_for(l, formula, witness.as_ref()).ok_or_else(|| uncovered(om))?;
                self.d.remove(0);
                next
            }
            OMove::Attack { index, target, kind } => {
                let (phi, premises) = self.ap.get(*index).ok_or_else(|| uncovered(om))?;
                if phi != target {
                    return Err(uncovered(om));
                }
                let next = r_premise_for(premises, phi, kind).ok_or_else(|| uncovered(om))?;
                self.ap.remove(*index);
                next
            }
        };
        self.current = Some(next);
        Ok(())
    }
}

/// The D-position an S-position stands for.
pub fn d_image(s: &SState) -> DState {
    let mut cp: Vec<Attack> = s.c.iter().cloned().collect();
    cp.extend(s.d.iter().map(|(_, c)| c.clone()));
    DState { ap: s.ap.clone(), cp, ao: s.ao.clone(), co: s.d.iter().map(|(a, _)| a.clone()).collect() }
}

/// D-strategy: plays the S-strategy on a shadow S-position and checks after
/// every move that the shadow maps onto the real D-position.
#[derive(Clone, Debug)]
pub struct DInterp {
    s: SInterp,
    shadow: SState,
}

impl DInterp {
    pub fn open(root: &Derivation, a: &Attack) -> Result<DInterp, DialogueError> {
        Ok(DInterp { s: SInterp::open(root, a)?, shadow: s_open(a) })
    }

    pub fn inner(&self) -> &SInterp {
        &self.s
    }

    fn sync(&self, d: &DState) -> Result<(), DialogueError> {
        if d_image(&self.shadow) == *d {
            Ok(())
        } else {
            Err(DialogueError::Internal(format!("shadow position {:?} does not map to {d:?}", self.shadow)))
        }
    }

    pub fn choose(&mut self, d: &DState) -> Result<PMove, DialogueError> {
        self.sync(d)?;
        let m = self.s.choose()?;
        self.shadow = s_pstep(&self.shadow, &m)?;
        Ok(m)
    }

    pub fn respond(&mut self, d: &DState, om: &OMove) -> Result<(), DialogueError> {
        self.sync(d)?;
        self.shadow = s_ostep(&self.shadow, om)?;
        self.s.respond(om)
    }
}
