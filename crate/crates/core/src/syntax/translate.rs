use super::formula::Formula;

/// Classical reading of `∧`, `∨`, `∃` inside the `→ ∀ ⊥` fragment.
pub fn de_morgan(phi: &Formula) -> Formula {
    match phi {
        Formula::Bot | Formula::Atom(..) => phi.clone(),
        Formula::Impl(a, b) => Formula::imp(de_morgan(a), de_morgan(b)),
        Formula::Conj(a, b) => Formula::neg(Formula::imp(de_morgan(a), Formula::neg(de_morgan(b)))),
        Formula::Disj(a, b) => Formula::imp(Formula::neg(de_morgan(a)), de_morgan(b)),
        Formula::All(a) => Formula::all(de_morgan(a)),
        Formula::Ex(a) => Formula::neg(Formula::all(Formula::neg(de_morgan(a)))),
    }
}

/// Gödel-Gentzen negative translation, landing in the fragment.
pub fn dn_translate(phi: &Formula) -> Formula {
    de_morgan(&gg(phi))
}

fn gg(phi: &Formula) -> Formula {
    match phi {
        Formula::Bot => Formula::Bot,
        Formula::Atom(..) => Formula::neg(Formula::neg(phi.clone())),
        Formula::Impl(a, b) => Formula::imp(gg(a), gg(b)),
        Formula::Conj(a, b) => Formula::conj(gg(a), gg(b)),
        Formula::Disj(a, b) => Formula::neg(Formula::conj(Formula::neg(gg(a)), Formula::neg(gg(b)))),
        Formula::All(a) => Formula::all(gg(a)),
        Formula::Ex(a) => Formula::neg(Formula::all(Formula::neg(gg(a)))),
    }
}
