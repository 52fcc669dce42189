//! Finite Heyting algebras: axiom checks, MacNeille completion and
//! formula evaluation.

mod algebra;
mod enumerate;
mod eval;
mod lindenbaum;
mod macneille;

use thiserror::Error;

use crate::kernel::{Calculus, CheckError};

pub use algebra::{check_heyting, distributivity_check, members, FiniteHeyting, Report, Violation};
pub use enumerate::{lattices, natural_orders, small_heyting_algebras};
pub use eval::{
    algebra_soundness_harness, eval_ctx, eval_formula, eval_over, harness_under, terms_up_to, AtomInterp,
};
pub use lindenbaum::{lindenbaum_le, Lindenbaum};
pub use macneille::{embedding_report, macneille, Completion};

#[derive(Debug, Error)]
pub enum HeytingError {
    #[error("not a lattice: {0}")]
    NotLattice(String),
    #[error("classical derivation needs a Boolean algebra; ({x} ⇒ {y}) ⇒ {x} is not below {x}")]
    NotBoolean { x: usize, y: usize },
    #[error("algebra evaluation expects natural deduction, got {0:?}")]
    NotNd(Calculus),
    #[error("element {0} is outside the carrier")]
    OutOfCarrier(usize),
    #[error(transparent)]
    Check(#[from] CheckError),
}
