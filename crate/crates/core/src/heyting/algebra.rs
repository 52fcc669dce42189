use serde::{Deserialize, Serialize};

use super::HeytingError;

/// A finite algebra given by tables. Equality of elements is only ever
/// read up to `≡` (mutual `≤`); the order need not be antisymmetric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteHeyting {
    pub size: usize,
    pub le: Vec<Vec<bool>>,
    pub bot: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    #[serde(rename = "impl")]
    pub imp: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub elements: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, law: &str, elements: &[usize]) {
        self.violations.push(Violation { law: law.to_string(), elements: elements.to_vec() });
    }
}

/// Members of a subset encoded as a bit mask.
pub fn members(mask: u64, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&i| mask >> i & 1 == 1)
}

impl FiniteHeyting {
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.le[x][y]
    }

    pub fn equiv(&self, x: usize, y: usize) -> bool {
        self.le[x][y] && self.le[y][x]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x][y]
    }

    pub fn imp(&self, x: usize, y: usize) -> usize {
        self.imp[x][y]
    }

    /// Greatest lower bound of the listed elements, the first one in index order
    /// when several are equivalent.
    pub fn big_meet(&self, xs: &[usize]) -> Option<usize> {
        let lower: Vec<usize> = (0..self.size).filter(|&z| xs.iter().all(|&y| self.le[z][y])).collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&z| self.le[z][m]))
    }

    pub fn big_join(&self, xs: &[usize]) -> Option<usize> {
        let upper: Vec<usize> = (0..self.size).filter(|&z| xs.iter().all(|&y| self.le[y][z])).collect();
        self.big_meet(&upper)
    }

    pub fn top(&self) -> usize {
        self.big_meet(&[]).expect("finite lattices have a top")
    }

    /// Builds meets, joins and the relative pseudo-complement from an order,
    /// failing when the order is not a lattice. The result still has to pass
    /// [`check_heyting`] to be a Heyting algebra.
    pub fn from_order(le: Vec<Vec<bool>>) -> Result<FiniteHeyting, HeytingError> {
        let size = le.len();
        if size == 0 {
            return Err(HeytingError::NotLattice("empty carrier".into()));
        }
        let mut h = FiniteHeyting { size, le, bot: 0, meet: vec![vec![0; size]; size], join: vec![vec![0; size]; size], imp: vec![vec![0; size]; size] };
        let all: Vec<usize> = (0..size).collect();
        h.bot = h.big_join(&[]).ok_or_else(|| HeytingError::NotLattice("no least element".into()))?;
        h.big_meet(&all).ok_or_else(|| HeytingError::NotLattice("no least element".into()))?;
        for x in 0..size {
            for y in 0..size {
                h.meet[x][y] = h.big_meet(&[x, y]).ok_or_else(|| HeytingError::NotLattice(format!("{x} and {y} have no meet")))?;
                h.join[x][y] = h.big_join(&[x, y]).ok_or_else(|| HeytingError::NotLattice(format!("{x} and {y} have no join")))?;
            }
        }
        for x in 0..size {
            for y in 0..size {
                let below: Vec<usize> = (0..size).filter(|&z| h.le[h.meet[z][x]][y]).collect();
                h.imp[x][y] = h.big_join(&below).expect("finite lattice");
            }
        }
        Ok(h)
    }

    /// Powerset of a `k`-element set, elements encoded as masks.
    pub fn boolean(k: usize) -> FiniteHeyting {
        let n = 1usize << k;
        let full = n - 1;
        let le = (0..n).map(|x| (0..n).map(|y| x & !y == 0).collect()).collect();
        let tab = |f: &dyn Fn(usize, usize) -> usize| (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect();
        FiniteHeyting {
            size: n,
            le,
            bot: 0,
            meet: tab(&|x, y| x & y),
            join: tab(&|x, y| x | y),
            imp: tab(&|x, y| (full & !x) | y),
        }
    }

    /// `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> FiniteHeyting {
        let le = (0..n).map(|x| (0..n).map(|y| x <= y).collect()).collect();
        FiniteHeyting::from_order(le).expect("chains are lattices")
    }

    pub fn boolean_witness(&self) -> Option<(usize, usize)> {
        for x in 0..self.size {
            for y in 0..self.size {
                if !self.le[self.imp(self.imp(x, y), x)][x] {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_boolean(&self) -> bool {
        self.boolean_witness().is_none()
    }
}

fn shape(h: &FiniteHeyting, r: &mut Report) -> bool {
    let n = h.size;
    let square = |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|row| row.len() == n && row.iter().all(|&v| v < n));
    let ok = n > 0
        && h.le.len() == n
        && h.le.iter().all(|row| row.len() == n)
        && h.bot < n
        && square(&h.meet)
        && square(&h.join)
        && square(&h.imp);
    if !ok {
        r.push("table shape", &[]);
    }
    ok
}

/// Exhaustive check of the preorder, the four Heyting laws and the big-meet clause.
pub fn check_heyting(h: &FiniteHeyting) -> Report {
    let mut r = Report::default();
    if !shape(h, &mut r) {
        return r;
    }
    let n = h.size;
    for x in 0..n {
        if !h.le[x][x] {
            r.push("reflexivity", &[x]);
        }
        if !h.le[h.bot][x] {
            r.push("bottom", &[x]);
        }
        for y in 0..n {
            for z in 0..n {
                if h.le[x][y] && h.le[y][z] && !h.le[x][z] {
                    r.push("transitivity", &[x, y, z]);
                }
                if h.le[h.meet(z, x)][y] != h.le[z][h.imp(x, y)] {
                    r.push("implication", &[x, y, z]);
                }
                if (h.le[z][x] && h.le[z][y]) != h.le[z][h.meet(x, y)] {
                    r.push("meet", &[x, y, z]);
                }
                if (h.le[x][z] && h.le[y][z]) != h.le[h.join(x, y)][z] {
                    r.push("join", &[x, y, z]);
                }
            }
        }
    }
    if n <= 16 {
        for mask in 0..(1u64 << n) {
            let p: Vec<usize> = members(mask, n).collect();
            match h.big_meet(&p) {
                Some(m) => {
                    for x in 0..n {
                        if p.iter().all(|&y| h.le[x][y]) != h.le[x][m] {
                            r.push("big meet", &[x, m]);
                        }
                    }
                }
                None => r.push("big meet exists", &p),
            }
        }
    }
    r
}

/// Finite and indexed distributivity, every violation with its witnesses.
pub fn distributivity_check(h: &FiniteHeyting) -> Report {
    let mut r = Report::default();
    let n = h.size;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = h.meet(x, h.join(y, z));
                let rhs = h.join(h.meet(x, y), h.meet(x, z));
                if !h.equiv(lhs, rhs) {
                    r.push("finite distributivity", &[x, y, z]);
                }
            }
        }
        if n <= 16 {
            for mask in 0..(1u64 << n) {
                let fam: Vec<usize> = members(mask, n).collect();
                let lhs = h.big_join(&fam).map(|j| h.meet(x, j));
                let rhs = h.big_join(&fam.iter().map(|&f| h.meet(x, f)).collect::<Vec<_>>());
                let ok = matches!((lhs, rhs), (Some(a), Some(b)) if h.equiv(a, b));
                if !ok {
                    let mut w = vec![x];
                    w.extend(fam);
                    r.push("indexed distributivity", &w);
                }
            }
        }
    }
    r
}
