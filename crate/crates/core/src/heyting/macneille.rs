use super::algebra::{members, FiniteHeyting, Report};

/// MacNeille completion by down-complete subsets, with the embedding `x ↦ x↓`.
pub struct Completion {
    pub algebra: FiniteHeyting,
    /// Subset of the source carrier behind each completed element.
    pub sets: Vec<u64>,
    pub embed: Vec<usize>,
}

fn lower(h: &FiniteHeyting, xs: u64) -> u64 {
    (0..h.size).filter(|&z| members(xs, h.size).all(|y| h.leq(z, y))).fold(0, |m, z| m | 1 << z)
}

fn upper(h: &FiniteHeyting, xs: u64) -> u64 {
    (0..h.size).filter(|&z| members(xs, h.size).all(|y| h.leq(y, z))).fold(0, |m, z| m | 1 << z)
}

fn closure(h: &FiniteHeyting, xs: u64) -> u64 {
    lower(h, upper(h, xs))
}

pub fn macneille(h: &FiniteHeyting) -> Completion {
    assert!(h.size <= 20, "carrier too large for subset enumeration");
    let n = h.size;
    let sets: Vec<u64> = (0..(1u64 << n)).filter(|&x| closure(h, x) & !x == 0).collect();
    let m = sets.len();
    let pos = |s: u64| sets.iter().position(|&t| t == s).expect("closed set");
    let le: Vec<Vec<bool>> = sets.iter().map(|&x| sets.iter().map(|&y| x & !y == 0).collect()).collect();
    let mut meet = vec![vec![0; m]; m];
    let mut join = vec![vec![0; m]; m];
    let mut imp = vec![vec![0; m]; m];
    for (i, &x) in sets.iter().enumerate() {
        for (j, &y) in sets.iter().enumerate() {
            meet[i][j] = pos(x & y);
            join[i][j] = pos(closure(h, x | y));
            let r = (0..n)
                .filter(|&z| members(x, n).all(|w| y >> h.meet(z, w) & 1 == 1))
                .fold(0u64, |acc, z| acc | 1 << z);
            imp[i][j] = pos(r);
        }
    }
    let down = |x: usize| (0..n).filter(|&z| h.leq(z, x)).fold(0u64, |acc, z| acc | 1 << z);
    let embed = (0..n).map(|x| pos(down(x))).collect();
    let bot = pos(down(h.bot));
    Completion { algebra: FiniteHeyting { size: m, le, bot, meet, join, imp }, sets, embed }
}

/// Order reflection and preservation of `0`, `⇒`, `⊓`, `⊔` up to equivalence.
pub fn embedding_report(h: &FiniteHeyting, c: &Completion) -> Report {
    let mut r = Report::default();
    let (f, hc) = (&c.embed, &c.algebra);
    let mut bad = |law: &str, els: &[usize]| {
        r.violations.push(super::algebra::Violation { law: law.into(), elements: els.to_vec() })
    };
    if !hc.equiv(f[h.bot], hc.bot) {
        bad("bottom", &[]);
    }
    for x in 0..h.size {
        for y in 0..h.size {
            if h.leq(x, y) != hc.leq(f[x], f[y]) {
                bad("order reflection", &[x, y]);
            }
            if !hc.equiv(f[h.imp(x, y)], hc.imp(f[x], f[y])) {
                bad("implication", &[x, y]);
            }
            if !hc.equiv(f[h.meet(x, y)], hc.meet(f[x], f[y])) {
                bad("meet", &[x, y]);
            }
            if !hc.equiv(f[h.join(x, y)], hc.join(f[x], f[y])) {
                bad("join", &[x, y]);
            }
        }
    }
    r
}
