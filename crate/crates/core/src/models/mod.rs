//! Finite Tarski and Kripke models, countermodel search, Henkin axiom
//! streams and the tree encoder.

mod henkin;
mod kripke;
mod random;
mod search;
mod table;
mod tarski;
mod wkl;

use thiserror::Error;

use crate::syntax::Formula;

pub use henkin::{explosion_axiom, henkin_axiom, henkin_step, omega_approx, HenkinStep, OmegaApprox};
pub use kripke::FiniteKripke;
pub use random::{random_env, random_kripke, random_model, random_tree};
pub use search::{countermodel_kripke, countermodel_tarski, preorders, Bounds, Countermodel};
pub use table::{tuples, Table};
pub use tarski::{Env, FiniteModel, FuncTables, PredTables};
pub use wkl::{wkl_encode, wkl_sat, wkl_sat_any, TreeOracle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("symbol {0} is not interpreted by the model")]
    UnknownSymbol(String),
    #[error("{symbol} has arity {expected}, used with {found} arguments")]
    Arity { symbol: String, expected: usize, found: usize },
    #[error("table for {symbol} has {found} entries, expected {expected}")]
    TableSize { symbol: String, expected: usize, found: usize },
    #[error("element {0} lies outside the domain")]
    OutOfDomain(usize),
    #[error("the domain must be non-empty")]
    EmptyDomain,
    #[error("the world order is not reflexive and transitive")]
    NotPreorder,
    #[error("valuation shrinks from world {from} to world {to}")]
    NotMonotone { from: usize, to: usize },
    #[error("Kripke satisfaction is defined on the → ∀ ⊥ fragment only")]
    NotFragment,
    #[error("no countermodel within the bounds")]
    Exhausted,
    #[error("expected a closed formula, found {0:?}")]
    OpenFormula(Formula),
    #[error("malformed tree: {0}")]
    Tree(String),
    #[error("proposition P{0} has no value in the assignment")]
    PropOutOfRange(usize),
    #[error("{0}")]
    Shape(String),
}
