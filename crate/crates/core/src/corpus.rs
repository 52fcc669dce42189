//! Fixed formula and derivation collections shared by the test suites and the CLI.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::kernel::{lj_search, lj_to_nd, ljt_search, ljt_to_nd, weaken, Calculus, Derivation, Judgment, Nd, ProofSearchBudget, Rule, RuleData};
use crate::syntax::{parse_formula, Formula, Signature, Term};

/// Intuitionistic theorems of the `→ ∀ ⊥` fragment.
pub const FRAGMENT_THEOREMS: &[&str] = &[
    "p -> p",
    "p -> q -> p",
    "(p -> q -> r) -> (p -> q) -> p -> r",
    "(p -> q) -> (q -> r) -> p -> r",
    "(p -> p -> q) -> p -> q",
    "(p -> q) -> ((p -> q) -> p) -> q",
    "false -> p",
    "~p -> p -> q",
    "p -> ~~p",
    "~~~p -> ~p",
    "(p -> q) -> ~q -> ~p",
    "~~(((p -> q) -> p) -> p)",
    "~~(~~p -> p)",
    "(~p -> ~q) -> q -> ~~p",
    "((p -> false) -> false) -> (p -> false) -> false",
    "forall x. P(x) -> P(x)",
    "(forall x. P(x)) -> P(c)",
    "(forall x. P(x)) -> P(f(c))",
    "(forall x. P(x) -> Q(x)) -> (forall x. P(x)) -> forall x. Q(x)",
    "(forall x. forall y. R(x, y)) -> forall y. forall x. R(x, y)",
    "(forall x. P(x)) -> forall y. P(f(y))",
    "(p -> forall x. P(x)) -> forall x. p -> P(x)",
    "(forall x. p -> P(x)) -> p -> forall x. P(x)",
    "(forall x. ~P(x)) -> ~P(c)",
    "~~(forall x. P(x)) -> forall x. ~~P(x)",
];

/// Fragment formulas with no intuitionistic proof.
pub const FRAGMENT_NON_THEOREMS: &[&str] = &[
    "((p -> q) -> p) -> p",
    "~~p -> p",
    "p",
    "false",
    "(p -> q) -> p",
    "~p -> ~p -> p",
    "forall x. P(x)",
    "(~~forall x. P(x)) -> forall x. P(x)",
];

/// Intuitionistic theorems using `∧ ∨ ∃`.
pub const FULL_THEOREMS: &[&str] = &[
    r"p /\ q -> q /\ p",
    r"p \/ q -> q \/ p",
    r"(p -> r) -> (q -> r) -> p \/ q -> r",
    r"~(p \/ q) -> ~p /\ ~q",
    r"~~(p \/ ~p)",
    r"p /\ (q \/ r) -> p /\ q \/ p /\ r",
    "(exists x. P(x)) -> exists y. P(y)",
    "(forall x. P(x)) -> exists x. P(x)",
    "(exists x. forall y. R(x, y)) -> forall y. exists x. R(x, y)",
    "(exists x. ~P(x)) -> ~forall x. P(x)",
    "(forall x. P(x) -> q) -> (exists x. P(x)) -> q",
];

/// Every formula over `⊥`, `p` and `q` built with `→ ∧ ∨` of at most `max_size` nodes,
/// ordered by size.
pub fn propositional(max_size: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(), vec![Formula::Bot, Formula::prop("p"), Formula::prop("q")]];
    for n in 2..=max_size {
        let mut level = Vec::new();
        for l in 1..n.saturating_sub(1) {
            let r = n - 1 - l;
            for a in &by_size[l] {
                for b in &by_size[r] {
                    level.push(Formula::imp(a.clone(), b.clone()));
                    level.push(Formula::conj(a.clone(), b.clone()));
                    level.push(Formula::disj(a.clone(), b.clone()));
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().take(max_size + 1).flatten().collect()
}

fn terms_of_size(sig: &Signature, vars: usize, n: usize) -> Vec<Term> {
    let mut out: Vec<Term> = if n == 1 { (0..vars).map(Term::Var).collect() } else { Vec::new() };
    for (f, arity) in &sig.funcs {
        for args in args_of_size(sig, vars, *arity, n - 1) {
            out.push(Term::App(f.clone(), args));
        }
    }
    out
}

fn args_of_size(sig: &Signature, vars: usize, arity: usize, n: usize) -> Vec<Vec<Term>> {
    if arity == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for k in 1..=n {
        for t in terms_of_size(sig, vars, k) {
            for rest in args_of_size(sig, vars, arity - 1, n - k) {
                let mut v = vec![t.clone()];
                v.extend(rest);
                out.push(v);
            }
        }
    }
    out
}

fn formulas_of_size(sig: &Signature, vars: usize, n: usize) -> Vec<Formula> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    if n == 1 {
        out.push(Formula::Bot);
    }
    for (p, arity) in &sig.preds {
        for args in args_of_size(sig, vars, *arity, n - 1) {
            out.push(Formula::Atom(p.clone(), args));
        }
    }
    for l in 1..n.saturating_sub(1) {
        let (ls, rs) = (formulas_of_size(sig, vars, l), formulas_of_size(sig, vars, n - 1 - l));
        for a in &ls {
            for b in &rs {
                out.push(Formula::imp(a.clone(), b.clone()));
                out.push(Formula::conj(a.clone(), b.clone()));
                out.push(Formula::disj(a.clone(), b.clone()));
            }
        }
    }
    for body in formulas_of_size(sig, vars + 1, n - 1) {
        out.push(Formula::All(Box::new(body.clone())));
        out.push(Formula::Ex(Box::new(body)));
    }
    out
}

/// Every formula over `sig` with at most `max_size` nodes (term nodes included)
/// whose free variables are below `vars`.
pub fn first_order(sig: &Signature, vars: usize, max_size: usize) -> Vec<Formula> {
    (1..=max_size).flat_map(|n| formulas_of_size(sig, vars, n)).collect()
}

fn focused_subproofs(d: &Derivation, out: &mut Vec<Derivation>) {
    if d.rule == Rule::C {
        out.push(d.premises[0].clone());
    }
    d.premises.iter().for_each(|p| focused_subproofs(p, out));
}

/// `Γ; φ ⇒ goal` by applying the focus to proofs of its antecedents found in `Γ`.
fn spine(ctx: &[Formula], focus: &Formula, budget: &ProofSearchBudget) -> Option<Derivation> {
    let node = |rule, data, premises, goal: &Formula| {
        Derivation::new(
            Calculus::Ljt,
            rule,
            data,
            premises,
            Judgment::LjtFocus { ctx: ctx.to_vec(), focus: focus.clone(), goal: goal.clone() },
        )
    };
    match focus {
        Formula::Impl(a, b) => {
            let left = ljt_search(ctx, a, budget).ok()?;
            let right = spine(ctx, b, budget)?;
            let goal = match &right.end {
                Judgment::LjtFocus { goal, .. } => goal.clone(),
                _ => return None,
            };
            Some(node(Rule::IL, RuleData::none(), vec![left, right], &goal))
        }
        Formula::All(a) => {
            let t = Term::constant("c");
            let right = spine(ctx, &a.inst(&t), budget)?;
            let goal = right.goal().clone();
            Some(node(Rule::AL, RuleData::term(t), vec![right], &goal))
        }
        _ => Some(node(Rule::A, RuleData::none(), Vec::new(), focus)),
    }
}

fn antecedents(phi: &Formula) -> Vec<Formula> {
    match phi {
        Formula::Impl(a, b) => {
            let mut out = vec![(**a).clone()];
            out.extend(antecedents(b));
            out
        }
        _ => Vec::new(),
    }
}

/// Seeded pairs `(Γ ⇒ φ, Γ; φ ⇒ ψ)` of LJT derivations built from search results.
/// Half take a focused subproof of a search result and pair it with a search for
/// its focus; the rest cut a closed theorem into a spine over its own antecedents.
pub fn cut_pairs(seed: u64, n: usize) -> Vec<(Derivation, Derivation)> {
    let budget = ProofSearchBudget::depth(14);
    let mut theorems = parse_all(FRAGMENT_THEOREMS);
    theorems.extend(propositional(7).into_iter().filter(|f| f.is_fragment() && !f.is_atomic()));
    let proofs: Vec<(Formula, Derivation)> =
        theorems.into_iter().filter_map(|f| ljt_search(&[], &f, &budget).ok().map(|d| (f, d))).collect();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (phi, d) = proofs.choose(&mut rng).expect("non-empty theorem list");
        if rng.gen_bool(0.5) {
            let mut foci = Vec::new();
            focused_subproofs(d, &mut foci);
            let Some(d2) = foci.choose(&mut rng) else { continue };
            let Judgment::LjtFocus { ctx, focus, .. } = &d2.end else { continue };
            let Ok(d1) = ljt_search(ctx, focus, &budget) else { continue };
            out.push((d1, d2.clone()));
        } else {
            let ctx = antecedents(phi);
            let Some(d2) = spine(&ctx, phi, &budget) else { continue };
            let d1 = weaken(d, &ctx).expect("closed derivation");
            out.push((d1, d2));
        }
    }
    out
}

pub fn parse_all(items: &[&str]) -> Vec<Formula> {
    items.iter().map(|s| parse_formula(s).expect("corpus formulas parse")).collect()
}

/// The β-redex `(λh. h) d`.
pub fn detour(d: Derivation) -> Derivation {
    let n = Nd::I;
    let mut ext = vec![d.goal().clone()];
    ext.extend_from_slice(d.ctx());
    n.let_in(d, n.hyp_at(&ext, 0))
}

/// `(λh. d) (λx. x)` where `h` is an unused hypothesis `ψ → ψ`.
pub fn detour_unused(d: Derivation, psi: Formula) -> Derivation {
    let n = Nd::I;
    let id = n.lam(n.hyp_at(&prepend(psi.clone(), d.ctx()), 0));
    let idty = Formula::imp(psi.clone(), psi);
    let body = weaken(&d, &prepend(idty, d.ctx())).expect("superset");
    n.let_in(id, body)
}

fn prepend(f: Formula, ctx: &[Formula]) -> Vec<Formula> {
    let mut v = vec![f];
    v.extend_from_slice(ctx);
    v
}

/// Fifty NDi proofs: normal proofs of [`FRAGMENT_THEOREMS`], explicit detours
/// and proofs that go through `E` from a `⊥` hypothesis.
pub fn nd_corpus() -> Vec<Derivation> {
    let budget = ProofSearchBudget::depth(14);
    let normal: Vec<Derivation> = parse_all(FRAGMENT_THEOREMS)
        .iter()
        .map(|phi| ljt_to_nd(&ljt_search(&[], phi, &budget).expect("corpus theorem")).expect("LJT"))
        .collect();
    let mut out = normal.clone();
    for (i, d) in normal.iter().take(10).enumerate() {
        out.push(if i % 2 == 0 { detour(d.clone()) } else { detour(detour(d.clone())) });
    }
    for d in normal.iter().skip(10).take(5) {
        out.push(detour_unused(d.clone(), parse_formula("q").unwrap()));
    }
    let n = Nd::I;
    let bot = vec![Formula::Bot];
    for phi in parse_all(&[
        "p",
        "p -> q",
        "forall x. P(x)",
        "(p -> q) -> r",
        "forall x. P(x) -> Q(c)",
        "~p",
        "false",
        "forall x. forall y. R(x, y)",
        "((p -> q) -> p) -> p",
    ]) {
        out.push(n.explode(n.hyp_at(&bot, 0), phi));
    }
    // ~p, p ⊢ q through E under a detour
    let ctx = parse_all(&["~p", "p"]);
    let boom = n.app(n.hyp_at(&ctx, 0), n.hyp_at(&ctx, 1));
    out.push(detour(n.explode(boom, parse_formula("q").unwrap())));
    out
}

/// Classical natural deduction proofs: the intuitionistic corpus retagged,
/// translated proofs of [`FULL_THEOREMS`] and a few Peirce instances in context.
pub fn classical_corpus() -> Vec<Derivation> {
    let budget = ProofSearchBudget::depth(14);
    let mut out: Vec<Derivation> = nd_corpus().iter().map(Derivation::to_classical).collect();
    for phi in parse_all(FULL_THEOREMS) {
        let lj = lj_search(&[], &phi, &budget).expect("corpus theorem");
        out.push(lj_to_nd(&lj).expect("LJ").to_classical());
    }
    let c = Nd::C;
    let ctx = parse_all(&["P(x0) -> q", "r"]);
    for (a, b) in [("p", "q"), ("P(x0)", "false"), ("P(x1)", "forall x. P(x)"), (r"p \/ q", "r")] {
        out.push(c.peirce(&ctx, parse_formula(a).unwrap(), parse_formula(b).unwrap()));
    }
    out
}
