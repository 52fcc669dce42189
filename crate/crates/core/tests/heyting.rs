use folwb_core::corpus::{nd_corpus, parse_all, FRAGMENT_NON_THEOREMS, FRAGMENT_THEOREMS};
use folwb_core::heyting::*;
use folwb_core::kernel::{build::Nd, check, Calculus, Derivation, ProofSearchBudget};
use folwb_core::syntax::{parse_formula, Formula, Subst, Sym, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn sample_algebras() -> Vec<FiniteHeyting> {
    let mut v = small_heyting_algebras().to_vec();
    v.push(FiniteHeyting::boolean(3));
    v
}

fn random_term(rng: &mut ChaCha8Rng, size: usize, vars: usize) -> Term {
    if size <= 1 || rng.gen_bool(0.4) {
        if rng.gen_bool(0.5) {
            Term::Var(rng.gen_range(0..vars))
        } else {
            Term::constant("c")
        }
    } else {
        Term::app("f", vec![random_term(rng, size - 1, vars)])
    }
}

fn random_atom(rng: &mut ChaCha8Rng, vars: usize) -> Formula {
    match rng.gen_range(0..3) {
        0 => Formula::prop("p"),
        1 => Formula::atom("P", vec![random_term(rng, 3, vars)]),
        _ => Formula::atom("Q", vec![random_term(rng, 2, vars), random_term(rng, 2, vars)]),
    }
}

fn random_formula(rng: &mut ChaCha8Rng, size: usize, vars: usize) -> Formula {
    if size <= 1 {
        return if rng.gen_bool(0.15) { Formula::Bot } else { random_atom(rng, vars) };
    }
    match rng.gen_range(0..5) {
        0 => Formula::all(random_formula(rng, size - 1, vars + 1)),
        1 => Formula::ex(random_formula(rng, size - 1, vars + 1)),
        k => {
            let left = if size > 2 { rng.gen_range(1..size - 1) } else { 1 };
            let a = random_formula(rng, left, vars);
            let b = random_formula(rng, (size - 1 - left).max(1), vars);
            match k {
                2 => Formula::imp(a, b),
                3 => Formula::conj(a, b),
                _ => Formula::disj(a, b),
            }
        }
    }
}

fn random_interp(rng: &mut ChaCha8Rng, h: &FiniteHeyting, keys: usize) -> AtomInterp {
    let mut i = AtomInterp::constant(rng.gen_range(0..h.size));
    for _ in 0..keys {
        if let Formula::Atom(p, args) = random_atom(rng, 2) {
            i.support.insert((p, args), rng.gen_range(0..h.size));
        }
    }
    i
}

fn max_var(phi: &Formula, i: &AtomInterp) -> usize {
    let mut m = phi.free_vars().into_iter().max().unwrap_or(0);
    for (_, args) in i.support.keys() {
        for t in args {
            m = m.max(t.free_vars().into_iter().max().unwrap_or(0));
        }
    }
    m
}

#[test]
fn quantifier_representatives_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let algebras = sample_algebras();
    let funcs = vec![(Sym::new("c"), 0), (Sym::new("f"), 1)];
    let mut mismatches = 0;
    for _ in 0..500 {
        let h = &algebras[rng.gen_range(0..algebras.len())];
        let keys = rng.gen_range(0..=3);
        let i = random_interp(&mut rng, h, keys);
        let size = rng.gen_range(2..=4);
        let phi = random_formula(&mut rng, size, 2);
        let all_terms = terms_up_to(&funcs, max_var(&phi, &i) + 3, 6);
        let fast = eval_formula(h, &i, &phi);
        let slow = eval_over(h, &i, &all_terms, &phi);
        if !h.equiv(fast, slow) {
            mismatches += 1;
        }
    }
    assert_eq!(mismatches, 0);
}

#[test]
fn every_heyting_algebra_is_distributive_and_embeds() {
    let algebras = small_heyting_algebras();
    for h in algebras {
        assert!(distributivity_check(h).ok());
        let c = macneille(h);
        assert!(check_heyting(&c.algebra).ok());
        assert!(embedding_report(h, &c).ok());
    }
}

#[test]
fn boolean_completion() {
    for k in 0..=3 {
        let b = FiniteHeyting::boolean(k);
        assert!(check_heyting(&b).ok());
        assert!(macneille(&b).algebra.is_boolean());
    }
}

#[test]
fn join_law() {
    for h in small_heyting_algebras() {
        for mask in 0..(1u64 << h.size) {
            let p: Vec<usize> = members(mask, h.size).collect();
            let j = h.big_join(&p).unwrap();
            for x in 0..h.size {
                assert_eq!(p.iter().all(|&y| h.leq(y, x)), h.leq(j, x));
            }
        }
    }
}

fn harness_corpus() -> Vec<Derivation> {
    let mut ds = nd_corpus();
    let budget = ProofSearchBudget::default();
    for s in [r"p /\ q -> q /\ p", "(exists x. P(x)) -> ~forall x. ~P(x)", r"p \/ q -> q \/ p"] {
        match lindenbaum_le(&Formula::top(), &f(s), &budget) {
            Lindenbaum::Yes { derivation } => ds.push(derivation),
            Lindenbaum::Unknown => panic!("{s}"),
        }
    }
    ds
}

#[test]
fn soundness_in_all_small_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let ds = harness_corpus();
    for h in sample_algebras() {
        for d in &ds {
            let i = random_interp(&mut rng, &h, 3);
            assert!(algebra_soundness_harness(d, &h, &i).unwrap());
        }
    }
}

#[test]
fn soundness_under_substitution() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let ds = harness_corpus();
    let h = FiniteHeyting::chain(4);
    for d in ds.iter().step_by(3) {
        for _ in 0..20 {
            let prefix = (0..3).map(|_| random_term(&mut rng, 3, 3)).collect();
            let sigma = Subst::new(prefix, rng.gen_range(0..3));
            let i = random_interp(&mut rng, &h, 3);
            assert!(harness_under(d, &h, &i, &sigma).unwrap());
        }
    }
}

#[test]
fn classical_needs_boolean() {
    let d = Nd(Calculus::Ndc).peirce(&[], f("p"), f("q"));
    check(&d).unwrap();
    let i = AtomInterp::constant(1);
    assert!(matches!(
        algebra_soundness_harness(&d, &FiniteHeyting::chain(3), &i),
        Err(HeytingError::NotBoolean { x: 1, y: 0 })
    ));
    let b = FiniteHeyting::boolean(2);
    for v in 0..4 {
        assert!(algebra_soundness_harness(&d, &b, &AtomInterp::constant(v)).unwrap());
    }
}

#[test]
fn lindenbaum_preorder() {
    let budget = ProofSearchBudget::default();
    let phi = f("p -> q");
    match lindenbaum_le(&phi, &phi, &budget) {
        Lindenbaum::Yes { derivation } => assert_eq!(derivation.height(), 1),
        Lindenbaum::Unknown => panic!(),
    }
    let taut = f("false -> false");
    for goal in parse_all(FRAGMENT_THEOREMS) {
        let Lindenbaum::Yes { derivation } = lindenbaum_le(&taut, &goal, &budget) else { panic!() };
        let j = check(&derivation).unwrap();
        assert_eq!(j.ctx(), std::slice::from_ref(&taut));
        assert_eq!(j.goal(), Some(&goal));
    }
    for depth in [2, 4, 8, 16] {
        assert_eq!(lindenbaum_le(&f("p"), &f("q"), &ProofSearchBudget::depth(depth)), Lindenbaum::Unknown);
    }
    assert!(parse_all(FRAGMENT_NON_THEOREMS)
        .iter()
        .all(|g| lindenbaum_le(&taut, g, &ProofSearchBudget::depth(8)) == Lindenbaum::Unknown));
}

#[test]
fn positive_formulas_are_monotone_in_the_interpretation() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let positives = ["p", r"p /\ P(c)", r"p \/ Q(c, c)", "forall x. P(x)", "exists x. P(x)", r"p /\ p"];
    for h in small_heyting_algebras() {
        for _ in 0..5 {
            let lo = random_interp(&mut rng, h, 3);
            let mut hi = lo.clone();
            for v in hi.support.values_mut() {
                let pick = rng.gen_range(0..h.size);
                *v = (0..h.size).filter(|&y| h.leq(*v, y)).nth(pick).unwrap_or(*v);
            }
            for s in positives {
                let phi = f(s);
                assert!(h.leq(eval_formula(h, &lo, &phi), eval_formula(h, &hi, &phi)), "{s}");
            }
        }
    }
}
