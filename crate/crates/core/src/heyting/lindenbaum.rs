use serde::Serialize;

use crate::kernel::{build::Nd, lj_search, lj_to_nd, ljt_search, ljt_to_nd, Calculus, Derivation, ProofSearchBudget};
use crate::syntax::Formula;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "lowercase")]
pub enum Lindenbaum {
    Yes { derivation: Derivation },
    Unknown,
}

/// Semi-decides `[φ] ⊢ ψ` in intuitionistic natural deduction.
pub fn lindenbaum_le(phi: &Formula, psi: &Formula, budget: &ProofSearchBudget) -> Lindenbaum {
    let ctx = vec![phi.clone()];
    if phi == psi {
        return Lindenbaum::Yes { derivation: Nd(Calculus::Ndi).hyp(&ctx, phi) };
    }
    let found = if phi.is_fragment() && psi.is_fragment() {
        ljt_search(&ctx, psi, budget).ok().and_then(|d| ljt_to_nd(&d).ok())
    } else {
        lj_search(&ctx, psi, budget).ok().and_then(|d| lj_to_nd(&d).ok())
    };
    match found {
        Some(derivation) => Lindenbaum::Yes { derivation },
        None => Lindenbaum::Unknown,
    }
}
