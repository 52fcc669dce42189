//! Encoding the length-`n` level of a binary tree as a propositional formula
//! over the countable signature `P0, P1, …`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::syntax::Formula;

use super::ModelError;

/// A finite binary tree given by its nodes up to `depth`; `true` is `tt`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeRepr", into = "TreeRepr")]
pub struct TreeOracle {
    depth: usize,
    nodes: BTreeSet<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct TreeRepr {
    depth: usize,
    nodes: Vec<Vec<bool>>,
}

impl TryFrom<TreeRepr> for TreeOracle {
    type Error = ModelError;

    fn try_from(r: TreeRepr) -> Result<Self, ModelError> {
        TreeOracle::new(r.depth, r.nodes)
    }
}

impl From<TreeOracle> for TreeRepr {
    fn from(t: TreeOracle) -> Self {
        TreeRepr { depth: t.depth, nodes: t.nodes.into_iter().collect() }
    }
}

impl TreeOracle {
    pub fn new(depth: usize, nodes: impl IntoIterator<Item = Vec<bool>>) -> Result<TreeOracle, ModelError> {
        let nodes: BTreeSet<Vec<bool>> = nodes.into_iter().collect();
        if !nodes.contains(&Vec::new()) {
            return Err(ModelError::Tree("the root must be a node".into()));
        }
        for l in &nodes {
            if l.len() > depth {
                return Err(ModelError::Tree(format!("node of length {} beyond depth {depth}", l.len())));
            }
            if !nodes.contains(&l[..l.len().saturating_sub(1)]) {
                return Err(ModelError::Tree(format!("{l:?} has no parent")));
            }
        }
        Ok(TreeOracle { depth, nodes })
    }

    /// All nodes that start with `tt` (plus the root), down to `depth`.
    pub fn full_after_tt(depth: usize) -> TreeOracle {
        let mut nodes = vec![Vec::new()];
        for len in 1..=depth {
            for bits in 0..(1u32 << (len - 1)) {
                let mut l = vec![true];
                l.extend((0..len - 1).rev().map(|i| bits >> i & 1 == 0));
                nodes.push(l);
            }
        }
        TreeOracle::new(depth, nodes).expect("prefix closed")
    }

    pub fn contains(&self, l: &[bool]) -> bool {
        self.nodes.contains(l)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Nodes of length `n`, `tt` before `ff` position by position.
    pub fn level(&self, n: usize) -> Vec<Vec<bool>> {
        let mut out: Vec<Vec<bool>> = self.nodes.iter().filter(|l| l.len() == n).cloned().collect();
        out.sort_by_key(|l| l.iter().map(|b| !b).collect::<Vec<_>>());
        out
    }
}

fn literal(i: usize, bit: bool) -> Formula {
    let p = Formula::prop(&format!("P{i}"));
    if bit {
        p
    } else {
        Formula::neg(p)
    }
}

/// `⋁` over the length-`n` nodes `l` of `⋀ᵢ Pᵢ^{(lᵢ)}`.
pub fn wkl_encode(tree: &TreeOracle, n: usize) -> Result<Formula, ModelError> {
    if n > tree.depth {
        return Err(ModelError::Tree(format!("level {n} is beyond the oracle depth {}", tree.depth)));
    }
    let disjuncts = tree
        .level(n)
        .into_iter()
        .map(|l| Formula::big_conj(l.iter().enumerate().map(|(i, &b)| literal(i, b)).collect()))
        .collect();
    Ok(Formula::big_disj(disjuncts))
}

fn prop_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('P')?;
    let i = digits.parse::<usize>().ok()?;
    (format!("P{i}") == name).then_some(i)
}

/// Truth-table evaluation with `Pᵢ` read from `assignment[i]`.
pub fn wkl_sat(phi: &Formula, assignment: &[bool]) -> Result<bool, ModelError> {
    Ok(match phi {
        Formula::Bot => false,
        Formula::Atom(p, args) if args.is_empty() => {
            let i = prop_index(p.as_str()).ok_or_else(|| ModelError::UnknownSymbol(p.to_string()))?;
            *assignment.get(i).ok_or(ModelError::PropOutOfRange(i))?
        }
        Formula::Atom(p, _) => return Err(ModelError::UnknownSymbol(p.to_string())),
        Formula::Impl(a, b) => !wkl_sat(a, assignment)? || wkl_sat(b, assignment)?,
        Formula::Conj(a, b) => wkl_sat(a, assignment)? && wkl_sat(b, assignment)?,
        Formula::Disj(a, b) => wkl_sat(a, assignment)? || wkl_sat(b, assignment)?,
        Formula::All(_) | Formula::Ex(_) => return Err(ModelError::Shape("quantifier in a propositional formula".into())),
    })
}

/// First satisfying assignment of `P0 … P(k-1)`, trying `tt` first at each position.
pub fn wkl_sat_any(phi: &Formula, k: usize) -> Result<Option<Vec<bool>>, ModelError> {
    for code in 0..(1u64 << k) {
        let a: Vec<bool> = (0..k).map(|i| code >> (k - 1 - i) & 1 == 0).collect();
        if wkl_sat(phi, &a)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: usize) -> Formula {
        literal(i, true)
    }

    fn np(i: usize) -> Formula {
        literal(i, false)
    }

    #[test]
    fn third_level_of_the_tt_tree() {
        let tree = TreeOracle::full_after_tt(3);
        let phi = wkl_encode(&tree, 3).unwrap();
        let c = |a, b, c| Formula::big_conj(vec![a, b, c]);
        let want = Formula::big_disj(vec![
            c(p(0), p(1), p(2)),
            c(p(0), p(1), np(2)),
            c(p(0), np(1), p(2)),
            c(p(0), np(1), np(2)),
        ]);
        assert_eq!(phi, want);
        assert!(wkl_sat(&phi, &[true, true, true]).unwrap());
        assert!(!wkl_sat(&phi, &[false, true, true]).unwrap());
    }

    #[test]
    fn root_only_and_full() {
        let root = TreeOracle::new(2, vec![vec![]]).unwrap();
        assert_eq!(wkl_encode(&root, 1).unwrap(), Formula::Bot);
        assert_eq!(wkl_sat_any(&Formula::Bot, 2).unwrap(), None);
        let full = TreeOracle::new(2, [vec![], vec![true], vec![false], vec![true, true], vec![true, false], vec![false, true], vec![false, false]]).unwrap();
        let phi = wkl_encode(&full, 2).unwrap();
        for a in [[true, true], [true, false], [false, true], [false, false]] {
            assert!(wkl_sat(&phi, &a).unwrap());
        }
        assert!(wkl_encode(&full, 3).is_err());
    }

    #[test]
    fn malformed_trees() {
        assert!(TreeOracle::new(2, vec![vec![true]]).is_err());
        assert!(TreeOracle::new(2, vec![vec![], vec![true, true]]).is_err());
        assert!(wkl_sat(&p(3), &[true]).is_err());
    }
}
