use serde::{Deserialize, Serialize};

use crate::syntax::{Formula, Term};

use super::tarski::{atom_in, check_funcs, eval_in, Env, FuncTables, PredTables};
use super::ModelError;

/// Finite Kripke model with constant domain. Validated on construction:
/// the order is a preorder and atoms (and `⊥`) only grow along it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "KripkeRepr", into = "KripkeRepr")]
pub struct FiniteKripke {
    worlds: usize,
    order: Vec<Vec<bool>>,
    domain: usize,
    funcs: FuncTables,
    preds: Vec<PredTables>,
    bot: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct KripkeRepr {
    worlds: usize,
    order: Vec<Vec<bool>>,
    domain: usize,
    #[serde(default)]
    funcs: FuncTables,
    per_world_preds: Vec<PredTables>,
    bot_table: Vec<bool>,
}

impl TryFrom<KripkeRepr> for FiniteKripke {
    type Error = ModelError;

    fn try_from(r: KripkeRepr) -> Result<Self, ModelError> {
        FiniteKripke::new(r.worlds, r.order, r.domain, r.funcs, r.per_world_preds, r.bot_table)
    }
}

impl From<FiniteKripke> for KripkeRepr {
    fn from(k: FiniteKripke) -> Self {
        KripkeRepr {
            worlds: k.worlds,
            order: k.order,
            domain: k.domain,
            funcs: k.funcs,
            per_world_preds: k.preds,
            bot_table: k.bot,
        }
    }
}

impl FiniteKripke {
    pub fn new(
        worlds: usize,
        order: Vec<Vec<bool>>,
        domain: usize,
        funcs: FuncTables,
        preds: Vec<PredTables>,
        bot: Vec<bool>,
    ) -> Result<FiniteKripke, ModelError> {
        if worlds == 0 || domain == 0 {
            return Err(ModelError::EmptyDomain);
        }
        if order.len() != worlds || order.iter().any(|r| r.len() != worlds) || preds.len() != worlds || bot.len() != worlds {
            return Err(ModelError::Shape(format!("expected {worlds} worlds in every table")));
        }
        for w in 0..worlds {
            if !order[w][w] {
                return Err(ModelError::NotPreorder);
            }
            for v in 0..worlds {
                for u in 0..worlds {
                    if order[w][v] && order[v][u] && !order[w][u] {
                        return Err(ModelError::NotPreorder);
                    }
                }
            }
        }
        check_funcs(&funcs, domain)?;
        for table in &preds {
            if table.keys().ne(preds[0].keys()) {
                return Err(ModelError::Shape("worlds disagree on the predicate symbols".into()));
            }
            for (p, t) in table {
                t.check(p.as_str(), domain)?;
                if t.arity != preds[0][p].arity {
                    return Err(ModelError::Shape(format!("{p} changes arity between worlds")));
                }
            }
        }
        for w in 0..worlds {
            for v in 0..worlds {
                if !order[w][v] {
                    continue;
                }
                let grows = preds[w]
                    .iter()
                    .all(|(p, t)| t.table.iter().zip(&preds[v][p].table).all(|(a, b)| !a || *b));
                if !grows || (bot[w] && !bot[v]) {
                    return Err(ModelError::NotMonotone { from: w, to: v });
                }
            }
        }
        Ok(FiniteKripke { worlds, order, domain, funcs, preds, bot })
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn le(&self, w: usize, v: usize) -> bool {
        self.order[w][v]
    }

    pub fn bot_table(&self) -> &[bool] {
        &self.bot
    }

    pub fn preds_at(&self, w: usize) -> &PredTables {
        &self.preds[w]
    }

    pub fn eval_term(&self, rho: &Env, t: &Term) -> Result<usize, ModelError> {
        eval_in(&self.funcs, self.domain, rho, t)
    }

    /// Every world forcing `⊥` forces every atom.
    pub fn is_exploding(&self) -> bool {
        (0..self.worlds).all(|w| !self.bot[w] || self.preds[w].values().all(|t| t.table.iter().all(|&b| b)))
    }

    pub fn ksat(&self, w: usize, rho: &Env, phi: &Formula) -> Result<bool, ModelError> {
        if !phi.is_fragment() {
            return Err(ModelError::NotFragment);
        }
        self.force(w, rho, phi)
    }

    fn force(&self, w: usize, rho: &Env, phi: &Formula) -> Result<bool, ModelError> {
        Ok(match phi {
            Formula::Bot => self.bot[w],
            Formula::Atom(p, args) => atom_in(&self.funcs, &self.preds[w], self.domain, rho, p, args)?,
            Formula::Impl(a, b) => {
                for v in (0..self.worlds).filter(|&v| self.order[w][v]) {
                    if self.force(v, rho, a)? && !self.force(v, rho, b)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::All(a) => {
                for d in 0..self.domain {
                    if !self.force(w, &rho.cons(d), a)? {
                        return Ok(false);
                    }
                }
                true
            }
            _ => return Err(ModelError::NotFragment),
        })
    }

    /// `w ⊩ Γ` implies `w ⊩ φ`.
    pub fn entails_at(&self, w: usize, rho: &Env, ctx: &[Formula], phi: &Formula) -> Result<bool, ModelError> {
        for h in ctx {
            if !self.ksat(w, rho, h)? {
                return Ok(true);
            }
        }
        self.ksat(w, rho, phi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::table::Table;
    use crate::syntax::{parse_formula, Sym};

    fn chain(p0: bool, p1: bool) -> Result<FiniteKripke, ModelError> {
        let at = |b| {
            let mut m = PredTables::new();
            m.insert(Sym::from("p"), Table { arity: 0, table: vec![b] });
            m
        };
        FiniteKripke::new(
            2,
            vec![vec![true, true], vec![false, true]],
            1,
            FuncTables::new(),
            vec![at(p0), at(p1)],
            vec![false, false],
        )
    }

    #[test]
    fn two_world_chain_refutes_dne() {
        let k = chain(false, true).unwrap();
        let dne = parse_formula("~~p -> p").unwrap();
        assert!(!k.ksat(0, &Env::default(), &dne).unwrap());
        assert!(k.ksat(1, &Env::default(), &dne).unwrap());
    }

    #[test]
    fn rejects_bad_models() {
        assert_eq!(chain(true, false), Err(ModelError::NotMonotone { from: 0, to: 1 }));
        let k = chain(false, true).unwrap();
        assert_eq!(k.ksat(0, &Env::default(), &parse_formula("p \\/ q").unwrap()), Err(ModelError::NotFragment));
    }

    #[test]
    fn json_round_trip() {
        let k = chain(false, true).unwrap();
        let s = serde_json::to_string(&k).unwrap();
        assert!(s.contains("per_world_preds"));
        assert_eq!(serde_json::from_str::<FiniteKripke>(&s).unwrap(), k);
        let bad = s.replace("[[true,true]", "[[false,true]");
        assert!(serde_json::from_str::<FiniteKripke>(&bad).is_err());
    }
}
