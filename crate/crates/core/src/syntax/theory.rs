use std::fmt;
use std::sync::Arc;

use super::formula::Formula;

pub type Generator = Arc<dyn Fn(u64) -> Option<Formula> + Send + Sync>;

/// A set of axioms, either listed or produced by a generator.
/// Enumerated theories are only ever inspected through finite prefixes.
#[derive(Clone)]
pub enum Theory {
    FiniteCtx(Vec<Formula>),
    Enumerated(Generator),
}

impl fmt::Debug for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theory::FiniteCtx(ctx) => f.debug_tuple("FiniteCtx").field(ctx).finish(),
            Theory::Enumerated(_) => f.write_str("Enumerated(..)"),
        }
    }
}

impl Theory {
    pub fn enumerated(g: impl Fn(u64) -> Option<Formula> + Send + Sync + 'static) -> Theory {
        Theory::Enumerated(Arc::new(g))
    }

    /// The axioms among the first `n` generator outputs, or the whole list.
    pub fn prefix(&self, n: u64) -> Vec<Formula> {
        match self {
            Theory::FiniteCtx(ctx) => ctx.clone(),
            Theory::Enumerated(g) => (0..n).filter_map(|i| g(i)).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Theory::FiniteCtx(_))
    }

    /// Membership for listed theories; `None` when it cannot be decided.
    pub fn contains(&self, phi: &Formula) -> Option<bool> {
        match self {
            Theory::FiniteCtx(ctx) => Some(ctx.contains(phi)),
            Theory::Enumerated(_) => None,
        }
    }
}
