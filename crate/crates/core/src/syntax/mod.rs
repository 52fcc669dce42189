//! De Bruijn terms and formulas, substitutions, signatures and the
//! surface syntax.

mod enumerate;
mod formula;
mod parse;
mod print;
mod signature;
mod subst;
mod sym;
mod term;
mod theory;
mod translate;

pub use enumerate::{pair, unpair, Enumerator};
pub use formula::{free_vars_all, fresh_var, shift_ctx, subst_ctx, Formula};
pub use parse::{free_var_name, parse_formula, parse_formula_with, parse_term, parse_term_with, ParseError, ParseOptions};
pub use print::{print_formula, print_term};
pub use signature::{close, closing_constant, sig_drop, sig_lift, SigKind, Signature, SignatureError, SignatureMorphism};
pub use subst::Subst;
pub use sym::Sym;
pub use term::Term;
pub use theory::{Generator, Theory};
pub use translate::{de_morgan, dn_translate};
