use std::sync::OnceLock;

use super::algebra::{check_heyting, FiniteHeyting};

/// Partial orders on `0..n` whose order extends the natural one, so every
/// finite poset appears at least once up to isomorphism.
pub fn natural_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0..(1u64 << pairs.len()) {
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            le[i][j] = mask >> k & 1 == 1;
        }
        let transitive = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(le[x][y] && le[y][z]) || le[x][z])));
        if transitive {
            out.push(le);
        }
    }
    out
}

/// Every lattice on `n ≤ 5` elements (with isomorphic repeats).
pub fn lattices(n: usize) -> Vec<FiniteHeyting> {
    natural_orders(n).into_iter().filter_map(|le| FiniteHeyting::from_order(le).ok()).collect()
}

/// Lattices of size 1..=5 that pass the Heyting check, computed once.
pub fn small_heyting_algebras() -> &'static [FiniteHeyting] {
    static CACHE: OnceLock<Vec<FiniteHeyting>> = OnceLock::new();
    CACHE.get_or_init(|| (1..=5).flat_map(lattices).filter(|h| check_heyting(h).ok()).collect())
}
