//! Axiom streams for the Henkin-style extension of a theory, and a bounded
//! stand-in for the maximal consistent extension.

use serde::{Deserialize, Serialize};

use crate::kernel::{ljt_search, ProofSearchBudget};
use crate::syntax::{Enumerator, Formula, Signature, Term, Theory};

use super::ModelError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HenkinStep {
    /// Add `φ⊥ → φ` for every closed `φ`.
    Explode(Formula),
    /// Add `φₙ[n] → ∀φₙ` for every `n`.
    Henkin,
}

/// Even indices replay `theory`, odd ones the axiom stream.
fn interleave(theory: Theory, stream: impl Fn(u64) -> Option<Formula> + Send + Sync + 'static) -> Theory {
    Theory::enumerated(move |i| {
        if i % 2 == 0 {
            match &theory {
                Theory::FiniteCtx(ctx) => ctx.get((i / 2) as usize).cloned(),
                Theory::Enumerated(g) => g(i / 2),
            }
        } else {
            stream(i / 2)
        }
    })
}

pub fn explosion_axiom(e: &Enumerator, bot: &Formula, k: u64) -> Option<Formula> {
    let phi = e.formula(k);
    phi.is_closed().then(|| Formula::imp(bot.clone(), phi))
}

pub fn henkin_axiom(e: &Enumerator, n: u64) -> Formula {
    let phi = e.formula(n);
    Formula::imp(phi.inst(&Term::Var(n as usize)), Formula::all(phi))
}

pub fn henkin_step(theory: Theory, step: HenkinStep, sig: &Signature) -> Result<Theory, ModelError> {
    if let Theory::FiniteCtx(ctx) = &theory {
        if let Some(open) = ctx.iter().find(|f| !f.is_closed()) {
            return Err(ModelError::OpenFormula(open.clone()));
        }
    }
    let e = Enumerator::new(sig);
    Ok(match step {
        HenkinStep::Explode(bot) => {
            if !bot.is_closed() {
                return Err(ModelError::OpenFormula(bot));
            }
            interleave(theory, move |k| explosion_axiom(&e, &bot, k))
        }
        HenkinStep::Henkin => interleave(theory, move |n| Some(henkin_axiom(&e, n))),
    })
}

/// Result of the bounded extension. Never claimed to be maximal or consistent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaApprox {
    /// `stages[k]` is the theory after considering the first `k` enumerated formulas.
    pub stages: Vec<Vec<Formula>>,
    pub approximate: bool,
}

impl OmegaApprox {
    pub fn theory(&self) -> &[Formula] {
        self.stages.last().expect("stage 0 always present")
    }
}

/// Stage `k+1` adds `φₖ` unless the search derives `φ⊥` with it but not without it.
pub fn omega_approx(
    theory: &Theory,
    bot: &Formula,
    n_stages: u64,
    budget: &ProofSearchBudget,
    sig: &Signature,
) -> OmegaApprox {
    let e = Enumerator::new(sig);
    let mut cur = theory.prefix(budget.theory_prefix);
    let mut stages = vec![cur.clone()];
    let derives = |ctx: &[Formula]| ljt_search(ctx, bot, budget).is_ok();
    for k in 0..n_stages {
        let phi = e.formula(k);
        let mut with = cur.clone();
        with.push(phi);
        if !derives(&with) || derives(&cur) {
            cur = with;
        }
        stages.push(cur.clone());
    }
    OmegaApprox { stages, approximate: true }
}
