//! Seeded random models, assignments and trees for soundness fuzzing.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::syntax::Signature;

use super::kripke::FiniteKripke;
use super::search::preorders;
use super::table::Table;
use super::tarski::{Env, FiniteModel, FuncTables, PredTables};
use super::wkl::TreeOracle;

fn random_funcs<R: Rng>(sig: &Signature, domain: usize, rng: &mut R) -> FuncTables {
    sig.funcs
        .iter()
        .map(|(f, a)| {
            let n = domain.pow(*a as u32);
            (f.clone(), Table { arity: *a, table: (0..n).map(|_| rng.gen_range(0..domain)).collect() })
        })
        .collect()
}

fn random_preds<R: Rng>(sig: &Signature, domain: usize, rng: &mut R) -> PredTables {
    sig.preds
        .iter()
        .map(|(p, a)| {
            let n = domain.pow(*a as u32);
            (p.clone(), Table { arity: *a, table: (0..n).map(|_| rng.gen_bool(0.5)).collect() })
        })
        .collect()
}

/// A standard model (`⊥` false) interpreting every symbol of `sig`.
pub fn random_model<R: Rng>(sig: &Signature, domain: usize, rng: &mut R) -> FiniteModel {
    FiniteModel { domain, funcs: random_funcs(sig, domain, rng), preds: random_preds(sig, domain, rng), bot: false }
}

/// A monotone Kripke model: each world's atoms are the union of random seeds
/// over the worlds below it. With `exploding`, some worlds force `⊥` and then
/// every atom.
pub fn random_kripke<R: Rng>(sig: &Signature, worlds: usize, domain: usize, exploding: bool, rng: &mut R) -> FiniteKripke {
    let order = preorders(worlds).choose(rng).expect("the discrete order exists").clone();
    let funcs = random_funcs(sig, domain, rng);
    let seeds: Vec<PredTables> = (0..worlds).map(|_| random_preds(sig, domain, rng)).collect();
    let bot_seed: Vec<bool> = (0..worlds).map(|_| exploding && rng.gen_bool(0.25)).collect();
    let ord = &order;
    let below = |w: usize| (0..worlds).filter(move |&v| ord[v][w]);
    let bot: Vec<bool> = (0..worlds).map(|w| below(w).any(|v| bot_seed[v])).collect();
    let preds = (0..worlds)
        .map(|w| {
            seeds[w]
                .iter()
                .map(|(p, t)| {
                    let table = (0..t.table.len()).map(|i| bot[w] || below(w).any(|v| seeds[v][p].table[i])).collect();
                    (p.clone(), Table { arity: t.arity, table })
                })
                .collect()
        })
        .collect();
    FiniteKripke::new(worlds, order, domain, funcs, preds, bot).expect("monotone by construction")
}

pub fn random_env<R: Rng>(vars: usize, domain: usize, rng: &mut R) -> Env {
    Env::new((0..vars).map(|_| rng.gen_range(0..domain)).collect(), rng.gen_range(0..domain))
}

/// A prefix-closed tree of the given depth keeping each child with probability `keep`.
pub fn random_tree<R: Rng>(depth: usize, keep: f64, rng: &mut R) -> TreeOracle {
    let mut nodes = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    while let Some(l) = frontier.pop() {
        if l.len() == depth {
            continue;
        }
        for b in [true, false] {
            if rng.gen_bool(keep) {
                let mut c: Vec<bool> = l.clone();
                c.push(b);
                nodes.push(c.clone());
                frontier.push(c);
            }
        }
    }
    TreeOracle::new(depth, nodes).expect("prefix closed by construction")
}
