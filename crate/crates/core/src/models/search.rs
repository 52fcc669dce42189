//! Exhaustive countermodel enumeration: increasing domain size, then
//! lexicographic tables. The first falsifying configuration wins.

use serde::{Deserialize, Serialize};

use crate::syntax::{fresh_var, Formula, Signature, Sym};

use super::kripke::FiniteKripke;
use super::table::Table;
use super::tarski::{Env, FiniteModel, FuncTables, PredTables};
use super::ModelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_domain: usize,
    pub max_worlds: usize,
    /// Hard cap on the number of candidate models inspected.
    pub max_candidates: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_domain: 2, max_worlds: 3, max_candidates: 1 << 22 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Countermodel {
    Tarski { model: FiniteModel, env: Env },
    Kripke { model: FiniteKripke, env: Env, world: usize },
}

/// Mixed-radix counter, least significant digit last.
struct Odometer {
    radix: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

impl Odometer {
    fn new(radix: Vec<usize>) -> Odometer {
        let done = radix.contains(&0);
        Odometer { digits: vec![0; radix.len()], radix, done }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.digits.clone();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.radix[i] {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

fn func_assignments(funcs: &[(Sym, usize)], domain: usize) -> impl Iterator<Item = FuncTables> + '_ {
    let sizes: Vec<usize> = funcs.iter().map(|(_, a)| domain.pow(*a as u32)).collect();
    let radix = vec![domain; sizes.iter().sum()];
    Odometer::new(radix).map(move |digits| {
        let mut out = FuncTables::new();
        let mut at = 0;
        for ((f, a), n) in funcs.iter().zip(&sizes) {
            out.insert(f.clone(), Table { arity: *a, table: digits[at..at + n].to_vec() });
            at += n;
        }
        out
    })
}

fn pred_tables(preds: &[(Sym, usize)], domain: usize, bits: &[usize]) -> PredTables {
    let mut out = PredTables::new();
    let mut at = 0;
    for (p, a) in preds {
        let n = domain.pow(*a as u32);
        out.insert(p.clone(), Table { arity: *a, table: bits[at..at + n].iter().map(|&b| b == 1).collect() });
        at += n;
    }
    out
}

fn pred_width(preds: &[(Sym, usize)], domain: usize) -> usize {
    preds.iter().map(|(_, a)| domain.pow(*a as u32)).sum()
}

fn budget(count: &mut u64, bounds: &Bounds) -> Result<(), ModelError> {
    *count += 1;
    if *count > bounds.max_candidates {
        Err(ModelError::Exhausted)
    } else {
        Ok(())
    }
}

/// First standard Tarski model and assignment falsifying `phi`.
pub fn countermodel_tarski(phi: &Formula, bounds: &Bounds) -> Result<Countermodel, ModelError> {
    let sig = Signature::infer(std::slice::from_ref(phi)).map_err(|e| ModelError::Shape(e.to_string()))?;
    let nvars = fresh_var(std::slice::from_ref(phi));
    let mut count = 0;
    for domain in 1..=bounds.max_domain {
        for funcs in func_assignments(&sig.funcs, domain) {
            for bits in Odometer::new(vec![2; pred_width(&sig.preds, domain)]) {
                budget(&mut count, bounds)?;
                let model = FiniteModel { domain, funcs: funcs.clone(), preds: pred_tables(&sig.preds, domain, &bits), bot: false };
                for env in Env::all(domain, nvars) {
                    if !model.sat(&env, phi)? {
                        return Ok(Countermodel::Tarski { model, env });
                    }
                }
            }
        }
    }
    Err(ModelError::Exhausted)
}

/// All reflexive transitive relations on `n` points, in lexicographic order.
pub fn preorders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    Odometer::new(vec![2; off.len()])
        .filter_map(|bits| {
            let mut r = vec![vec![false; n]; n];
            for i in 0..n {
                r[i][i] = true;
            }
            for (&(i, j), &b) in off.iter().zip(&bits) {
                r[i][j] = b == 1;
            }
            let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(r[a][b] && r[b][c]) || r[a][c])));
            transitive.then_some(r)
        })
        .collect()
}

/// First standard Kripke model, assignment and world not forcing `phi`.
pub fn countermodel_kripke(phi: &Formula, bounds: &Bounds) -> Result<Countermodel, ModelError> {
    if !phi.is_fragment() {
        return Err(ModelError::NotFragment);
    }
    let sig = Signature::infer(std::slice::from_ref(phi)).map_err(|e| ModelError::Shape(e.to_string()))?;
    let nvars = fresh_var(std::slice::from_ref(phi));
    let mut count = 0;
    for domain in 1..=bounds.max_domain {
        let width = pred_width(&sig.preds, domain);
        for worlds in 1..=bounds.max_worlds {
            for order in preorders(worlds) {
                for funcs in func_assignments(&sig.funcs, domain) {
                    for bits in Odometer::new(vec![2; width * worlds]) {
                        budget(&mut count, bounds)?;
                        let preds = (0..worlds).map(|w| pred_tables(&sig.preds, domain, &bits[w * width..(w + 1) * width])).collect();
                        let Ok(model) =
                            FiniteKripke::new(worlds, order.clone(), domain, funcs.clone(), preds, vec![false; worlds])
                        else {
                            continue;
                        };
                        for env in Env::all(domain, nvars) {
                            for world in 0..worlds {
                                if !model.ksat(world, &env, phi)? {
                                    return Ok(Countermodel::Kripke { model, env, world });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Err(ModelError::Exhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn preorder_counts() {
        assert_eq!(preorders(1).len(), 1);
        assert_eq!(preorders(2).len(), 4);
        assert_eq!(preorders(3).len(), 29);
    }

    #[test]
    fn peirce_needs_two_worlds() {
        let peirce = parse_formula("((p -> q) -> p) -> p").unwrap();
        let Countermodel::Kripke { model, env, world } = countermodel_kripke(&peirce, &Bounds::default()).unwrap() else {
            panic!()
        };
        assert_eq!(model.worlds(), 2);
        assert!(!model.ksat(world, &env, &peirce).unwrap());
        assert!(matches!(countermodel_tarski(&peirce, &Bounds::default()), Err(ModelError::Exhausted)));
    }

    #[test]
    fn valid_formulas_survive() {
        for s in ["p -> p", "(forall x. P(x)) -> P(f(x0))"] {
            let phi = parse_formula(s).unwrap();
            assert_eq!(countermodel_kripke(&phi, &Bounds::default()), Err(ModelError::Exhausted));
            assert_eq!(countermodel_tarski(&phi, &Bounds::default()), Err(ModelError::Exhausted));
        }
        let phi = parse_formula("(forall x. P(x)) -> exists x. P(x)").unwrap();
        assert_eq!(countermodel_tarski(&phi, &Bounds { max_domain: 3, ..Bounds::default() }), Err(ModelError::Exhausted));
    }
}
