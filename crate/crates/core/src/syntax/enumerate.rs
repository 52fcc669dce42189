use super::formula::{fresh_var, Formula};
use super::signature::{SigKind, Signature};
use super::sym::Sym;
use super::term::Term;

/// Szudzik pairing.
pub fn pair(x: u64, y: u64) -> Option<u64> {
    if x < y {
        y.checked_mul(y)?.checked_add(x)
    } else {
        x.checked_mul(x)?.checked_add(x)?.checked_add(y)
    }
}

pub fn unpair(z: u64) -> (u64, u64) {
    let mut s = (z as f64).sqrt() as u64;
    while s * s > z {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= z {
        s += 1;
    }
    let r = z - s * s;
    if r < s {
        (r, s)
    } else {
        (s, r - s)
    }
}

#[derive(Debug, Clone)]
enum Preds {
    Finite(Vec<(Sym, usize)>),
    Nat,
}

/// Total decoder of naturals into fragment formulas.
///
/// Every constructor code strictly exceeds the codes of its parts and a
/// variable `x` costs at least `x`, so the formula at index `n` only has
/// free variables below `n` without any shifting.
#[derive(Debug, Clone)]
pub struct Enumerator {
    funcs: Vec<(Sym, usize)>,
    preds: Preds,
}

impl Enumerator {
    pub fn new(sig: &Signature) -> Enumerator {
        match sig.kind {
            SigKind::SigmaNat => Enumerator { funcs: Vec::new(), preds: Preds::Nat },
            _ => Enumerator { funcs: sig.funcs.clone(), preds: Preds::Finite(sig.preds.clone()) },
        }
    }

    pub fn term(&self, k: u64) -> Term {
        if self.funcs.is_empty() {
            return Term::Var(k as usize);
        }
        if k.is_multiple_of(2) {
            return Term::Var((k / 2) as usize);
        }
        let (fi, rest) = unpair(k / 2);
        let (f, arity) = &self.funcs[(fi % self.funcs.len() as u64) as usize];
        Term::App(f.clone(), self.terms(rest, *arity))
    }

    fn terms(&self, mut r: u64, m: usize) -> Vec<Term> {
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            if i + 1 == m {
                out.push(self.term(r));
            } else {
                let (a, b) = unpair(r);
                out.push(self.term(a));
                r = b;
            }
        }
        out
    }

    fn decode(&self, k: u64) -> Formula {
        let r = k / 4;
        match k % 4 {
            0 => Formula::Bot,
            1 => match &self.preds {
                Preds::Nat => Formula::Atom(Sym::from(format!("P{r}")), Vec::new()),
                Preds::Finite(ps) if ps.is_empty() => Formula::Bot,
                Preds::Finite(ps) => {
                    let (pi, rest) = unpair(r);
                    let (p, arity) = &ps[(pi % ps.len() as u64) as usize];
                    Formula::Atom(p.clone(), self.terms(rest, *arity))
                }
            },
            2 => {
                let (a, b) = unpair(r);
                Formula::imp(self.decode(a), self.decode(b))
            }
            _ => Formula::all(self.decode(r)),
        }
    }

    pub fn formula(&self, n: u64) -> Formula {
        let phi = self.decode(n);
        debug_assert!(fresh_var(std::slice::from_ref(&phi)) as u64 <= n);
        phi
    }

    fn encode_term(&self, t: &Term) -> Option<u64> {
        match t {
            Term::Var(x) if self.funcs.is_empty() => Some(*x as u64),
            Term::Var(x) => (*x as u64).checked_mul(2),
            Term::App(f, args) => {
                let fi = self.funcs.iter().position(|(g, a)| g == f && *a == args.len())?;
                let code = pair(fi as u64, self.encode_terms(args)?)?;
                code.checked_mul(2)?.checked_add(1)
            }
        }
    }

    fn encode_terms(&self, args: &[Term]) -> Option<u64> {
        match args {
            [] => Some(0),
            [t] => self.encode_term(t),
            [t, rest @ ..] => pair(self.encode_term(t)?, self.encode_terms(rest)?),
        }
    }

    /// Inverse of `decode` on fragment formulas.
    fn encode(&self, phi: &Formula) -> Option<u64> {
        let (tag, r) = match phi {
            Formula::Bot => (0, 0),
            Formula::Atom(p, args) => {
                let r = match &self.preds {
                    Preds::Nat => {
                        let i = p.as_str().strip_prefix('P')?.parse::<u64>().ok()?;
                        if !args.is_empty() || format!("P{i}") != p.as_str() {
                            return None;
                        }
                        i
                    }
                    Preds::Finite(ps) => {
                        let pi = ps.iter().position(|(q, a)| q == p && *a == args.len())?;
                        pair(pi as u64, self.encode_terms(args)?)?
                    }
                };
                (1, r)
            }
            Formula::Impl(a, b) => (2, pair(self.encode(a)?, self.encode(b)?)?),
            Formula::All(a) => (3, self.encode(a)?),
            _ => return None,
        };
        r.checked_mul(4)?.checked_add(tag)
    }

    /// Index at which `formula` yields `phi`, if it fits in a `u64`.
    pub fn index_of(&self, phi: &Formula) -> Option<u64> {
        self.encode(phi)
    }
}
