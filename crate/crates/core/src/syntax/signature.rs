use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::formula::Formula;
use super::sym::Sym;
use super::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{name}` expects {expected} arguments, found {found}")]
    ArityMismatch { name: String, expected: usize, found: usize },
    #[error("duplicate symbol `{0}`")]
    Duplicate(String),
    #[error("symbol `{0}` collides with the reserved constant namespace")]
    Reserved(String),
    #[error("signature morphism: {0}")]
    Morphism(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigKind {
    Finite,
    /// No function symbols; a nullary predicate `P{i}` for every `i`.
    SigmaNat,
    /// Function symbols `f{i}_{a}` and predicates `P{i}_{a}` of arity `a`.
    SigmaPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub funcs: Vec<(Sym, usize)>,
    pub preds: Vec<(Sym, usize)>,
    pub kind: SigKind,
}

fn indexed(name: &str, head: char) -> Option<usize> {
    let rest = name.strip_prefix(head)?;
    if rest.is_empty() || (rest.len() > 1 && rest.starts_with('0')) {
        return None;
    }
    rest.parse().ok()
}

fn pair_indexed(name: &str, head: char) -> Option<(usize, usize)> {
    let rest = name.strip_prefix(head)?;
    let (i, a) = rest.split_once('_')?;
    Some((i.parse().ok()?, a.parse().ok()?))
}

impl Signature {
    pub fn finite(funcs: &[(&str, usize)], preds: &[(&str, usize)]) -> Result<Signature, SignatureError> {
        let sig = Signature {
            funcs: funcs.iter().map(|(n, a)| (Sym::new(n), *a)).collect(),
            preds: preds.iter().map(|(n, a)| (Sym::new(n), *a)).collect(),
            kind: SigKind::Finite,
        };
        sig.validate()?;
        Ok(sig)
    }

    pub fn sigma_nat() -> Signature {
        Signature { funcs: Vec::new(), preds: Vec::new(), kind: SigKind::SigmaNat }
    }

    pub fn sigma_pair() -> Signature {
        Signature { funcs: Vec::new(), preds: Vec::new(), kind: SigKind::SigmaPair }
    }

    pub fn validate(&self) -> Result<(), SignatureError> {
        for list in [&self.funcs, &self.preds] {
            let mut seen = std::collections::BTreeSet::new();
            for (s, _) in list {
                if !seen.insert(s.clone()) {
                    return Err(SignatureError::Duplicate(s.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn func_arity(&self, f: &Sym) -> Option<usize> {
        match self.kind {
            SigKind::Finite => self.funcs.iter().find(|(g, _)| g == f).map(|(_, a)| *a),
            SigKind::SigmaNat => None,
            SigKind::SigmaPair => pair_indexed(f.as_str(), 'f').map(|(_, a)| a),
        }
    }

    pub fn pred_arity(&self, p: &Sym) -> Option<usize> {
        match self.kind {
            SigKind::Finite => self.preds.iter().find(|(q, _)| q == p).map(|(_, a)| *a),
            SigKind::SigmaNat => indexed(p.as_str(), 'P').map(|_| 0),
            SigKind::SigmaPair => pair_indexed(p.as_str(), 'P').map(|(_, a)| a),
        }
    }

    pub fn check_term(&self, t: &Term) -> Result<(), SignatureError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                let a = self.func_arity(f).ok_or_else(|| SignatureError::UnknownSymbol(f.to_string()))?;
                if a != args.len() {
                    return Err(SignatureError::ArityMismatch { name: f.to_string(), expected: a, found: args.len() });
                }
                args.iter().try_for_each(|s| self.check_term(s))
            }
        }
    }

    pub fn check_formula(&self, phi: &Formula) -> Result<(), SignatureError> {
        match phi {
            Formula::Bot => Ok(()),
            Formula::Atom(p, args) => {
                let a = self.pred_arity(p).ok_or_else(|| SignatureError::UnknownSymbol(p.to_string()))?;
                if a != args.len() {
                    return Err(SignatureError::ArityMismatch { name: p.to_string(), expected: a, found: args.len() });
                }
                args.iter().try_for_each(|s| self.check_term(s))
            }
            Formula::Impl(a, b) | Formula::Conj(a, b) | Formula::Disj(a, b) => {
                self.check_formula(a)?;
                self.check_formula(b)
            }
            Formula::All(a) | Formula::Ex(a) => self.check_formula(a),
        }
    }

    /// Smallest finite signature covering the formulas; fails on inconsistent arities.
    pub fn infer(items: &[Formula]) -> Result<Signature, SignatureError> {
        let mut funcs: BTreeMap<Sym, usize> = BTreeMap::new();
        let mut preds: BTreeMap<Sym, usize> = BTreeMap::new();
        fn note(map: &mut BTreeMap<Sym, usize>, s: &Sym, n: usize) -> Result<(), SignatureError> {
            match map.get(s) {
                Some(&a) if a != n => {
                    Err(SignatureError::ArityMismatch { name: s.to_string(), expected: a, found: n })
                }
                _ => {
                    map.insert(s.clone(), n);
                    Ok(())
                }
            }
        }
        fn term(t: &Term, funcs: &mut BTreeMap<Sym, usize>) -> Result<(), SignatureError> {
            if let Term::App(f, args) = t {
                note(funcs, f, args.len())?;
                for a in args {
                    term(a, funcs)?;
                }
            }
            Ok(())
        }
        fn form(
            f: &Formula,
            funcs: &mut BTreeMap<Sym, usize>,
            preds: &mut BTreeMap<Sym, usize>,
        ) -> Result<(), SignatureError> {
            match f {
                Formula::Bot => Ok(()),
                Formula::Atom(p, args) => {
                    note(preds, p, args.len())?;
                    args.iter().try_for_each(|t| term(t, funcs))
                }
                Formula::Impl(a, b) | Formula::Conj(a, b) | Formula::Disj(a, b) => {
                    form(a, funcs, preds)?;
                    form(b, funcs, preds)
                }
                Formula::All(a) | Formula::Ex(a) => form(a, funcs, preds),
            }
        }
        for f in items {
            form(f, &mut funcs, &mut preds)?;
        }
        Ok(Signature {
            funcs: funcs.into_iter().collect(),
            preds: preds.into_iter().collect(),
            kind: SigKind::Finite,
        })
    }

    pub fn merge(&self, other: &Signature) -> Result<Signature, SignatureError> {
        let mut out = self.clone();
        for (f, a) in &other.funcs {
            match out.func_arity(f) {
                Some(b) if b != *a => {
                    return Err(SignatureError::ArityMismatch { name: f.to_string(), expected: b, found: *a })
                }
                Some(_) => {}
                None => out.funcs.push((f.clone(), *a)),
            }
        }
        for (p, a) in &other.preds {
            match out.pred_arity(p) {
                Some(b) if b != *a => {
                    return Err(SignatureError::ArityMismatch { name: p.to_string(), expected: b, found: *a })
                }
                Some(_) => {}
                None => out.preds.push((p.clone(), *a)),
            }
        }
        Ok(out)
    }
}

/// Name of the `n`-th closing constant.
pub fn closing_constant(n: usize) -> Sym {
    Sym::from(format!("c{n}"))
}

fn closing_index(s: &Sym) -> Option<usize> {
    indexed(s.as_str(), 'c')
}

/// Checks that `Σ` leaves the `c{n}` namespace free so `Σ_c` is well defined.
pub fn sig_lift(sig: &Signature, phi: &Formula) -> Result<Formula, SignatureError> {
    if let Some((f, _)) = sig.funcs.iter().find(|(f, _)| closing_index(f).is_some()) {
        return Err(SignatureError::Reserved(f.to_string()));
    }
    sig.check_formula(phi)?;
    Ok(phi.clone())
}

/// Replaces every free `Var x` by the constant `c{x}`.
pub fn close(phi: &Formula) -> Formula {
    let n = super::formula::fresh_var(std::slice::from_ref(phi));
    let prefix = (0..n).map(|x| Term::App(closing_constant(x), Vec::new())).collect();
    phi.subst(&super::subst::Subst::new(prefix, n))
}

/// Replaces each closing constant `c{n}` by the variable `m + n`, counting binders.
pub fn sig_drop(m: usize, phi: &Formula) -> Formula {
    fn term(m: usize, t: &Term) -> Term {
        match t {
            Term::Var(x) => Term::Var(*x),
            Term::App(f, args) if args.is_empty() => match closing_index(f) {
                Some(n) => Term::Var(m + n),
                None => t.clone(),
            },
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| term(m, a)).collect()),
        }
    }
    match phi {
        Formula::Bot => Formula::Bot,
        Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|t| term(m, t)).collect()),
        Formula::Impl(a, b) => Formula::imp(sig_drop(m, a), sig_drop(m, b)),
        Formula::Conj(a, b) => Formula::conj(sig_drop(m, a), sig_drop(m, b)),
        Formula::Disj(a, b) => Formula::disj(sig_drop(m, a), sig_drop(m, b)),
        Formula::All(a) => Formula::all(sig_drop(m + 1, a)),
        Formula::Ex(a) => Formula::ex(sig_drop(m + 1, a)),
    }
}

/// Injective, arity-preserving renaming of symbols between signatures.
#[derive(Debug, Clone)]
pub struct SignatureMorphism {
    funcs: BTreeMap<Sym, Sym>,
    preds: BTreeMap<Sym, Sym>,
}

impl SignatureMorphism {
    pub fn new(
        source: &Signature,
        target: &Signature,
        funcs: BTreeMap<Sym, Sym>,
        preds: BTreeMap<Sym, Sym>,
    ) -> Result<SignatureMorphism, SignatureError> {
        for (table, src_list, is_func) in [(&funcs, &source.funcs, true), (&preds, &source.preds, false)] {
            let mut images = std::collections::BTreeSet::new();
            for (s, a) in src_list {
                let img = table
                    .get(s)
                    .ok_or_else(|| SignatureError::Morphism(format!("no image for `{s}`")))?;
                let ta = if is_func { target.func_arity(img) } else { target.pred_arity(img) };
                match ta {
                    Some(b) if b == *a => {}
                    Some(b) => {
                        return Err(SignatureError::Morphism(format!(
                            "`{s}` has arity {a} but its image `{img}` has arity {b}"
                        )))
                    }
                    None => return Err(SignatureError::Morphism(format!("`{img}` is not in the target"))),
                }
                if !images.insert(img.clone()) {
                    return Err(SignatureError::Morphism(format!("`{img}` is hit twice")));
                }
            }
        }
        Ok(SignatureMorphism { funcs, preds })
    }

    pub fn identity(sig: &Signature) -> SignatureMorphism {
        SignatureMorphism {
            funcs: sig.funcs.iter().map(|(f, _)| (f.clone(), f.clone())).collect(),
            preds: sig.preds.iter().map(|(p, _)| (p.clone(), p.clone())).collect(),
        }
    }

    /// The canonical embedding of a finite signature into the pair-indexed one.
    pub fn into_sigma_pair(source: &Signature) -> Result<SignatureMorphism, SignatureError> {
        let funcs = source
            .funcs
            .iter()
            .enumerate()
            .map(|(i, (f, a))| (f.clone(), Sym::from(format!("f{i}_{a}"))))
            .collect();
        let preds = source
            .preds
            .iter()
            .enumerate()
            .map(|(i, (p, a))| (p.clone(), Sym::from(format!("P{i}_{a}"))))
            .collect();
        SignatureMorphism::new(source, &Signature::sigma_pair(), funcs, preds)
    }

    fn map_term(t: &Term, funcs: &BTreeMap<Sym, Sym>) -> Term {
        match t {
            Term::Var(x) => Term::Var(*x),
            Term::App(f, args) => Term::App(
                funcs.get(f).cloned().unwrap_or_else(|| f.clone()),
                args.iter().map(|a| Self::map_term(a, funcs)).collect(),
            ),
        }
    }

    fn map_formula(phi: &Formula, funcs: &BTreeMap<Sym, Sym>, preds: &BTreeMap<Sym, Sym>) -> Formula {
        let go = |f: &Formula| Self::map_formula(f, funcs, preds);
        match phi {
            Formula::Bot => Formula::Bot,
            Formula::Atom(p, args) => Formula::Atom(
                preds.get(p).cloned().unwrap_or_else(|| p.clone()),
                args.iter().map(|t| Self::map_term(t, funcs)).collect(),
            ),
            Formula::Impl(a, b) => Formula::imp(go(a), go(b)),
            Formula::Conj(a, b) => Formula::conj(go(a), go(b)),
            Formula::Disj(a, b) => Formula::disj(go(a), go(b)),
            Formula::All(a) => Formula::all(go(a)),
            Formula::Ex(a) => Formula::ex(go(a)),
        }
    }

    pub fn embed(&self, phi: &Formula) -> Formula {
        Self::map_formula(phi, &self.funcs, &self.preds)
    }

    pub fn unembed(&self, phi: &Formula) -> Formula {
        let inv = |m: &BTreeMap<Sym, Sym>| m.iter().map(|(a, b)| (b.clone(), a.clone())).collect::<BTreeMap<_, _>>();
        Self::map_formula(phi, &inv(&self.funcs), &inv(&self.preds))
    }
}
