//! Proof trees for five calculi, their checker, and the transformations
//! and searches that produce them.

pub mod build;
mod check;
mod derivation;
pub mod ljd;
mod search;
mod structural;
mod translate;

use thiserror::Error;

pub use build::Nd;
pub use check::{check, CheckError};
pub use derivation::{Calculus, Derivation, Judgment, Rule, RuleData};
pub use search::{
    lj_search, ljt_search, ljt_search_cancellable, theory_prove, ProofSearchBudget, SearchError,
};
pub use structural::{binder_premises, named_close, named_open, reshape, subst_deriv, weaken, Binder};
pub use translate::{demorgan_transform, dn_transform, lj_to_nd, ljt_to_lj, ljt_to_nd, stab};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("target context does not contain the source context")]
    NotSuperset,
    #[error("variable x{0} is not fresh")]
    NotFresh(usize),
    #[error("expected a derivation in {expected:?}, found {found:?}")]
    WrongCalculus { expected: Vec<Calculus>, found: Calculus },
    #[error("formula outside the → ∀ ⊥ fragment")]
    NotFragment,
    #[error("{0}")]
    Mismatch(String),
}
