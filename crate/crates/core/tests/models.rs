use folwb_core::corpus::{classical_corpus, nd_corpus, parse_all, propositional, FRAGMENT_NON_THEOREMS, FRAGMENT_THEOREMS, FULL_THEOREMS};
use folwb_core::kernel::{check, ljt_search, Derivation, ProofSearchBudget};
use folwb_core::models::*;
use folwb_core::syntax::{de_morgan, fresh_var, parse_formula, Formula, Signature};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn subderivations(d: &Derivation) -> Vec<&Derivation> {
    let mut out = vec![d];
    for p in &d.premises {
        out.extend(subderivations(p));
    }
    out
}

fn judgment_formulas(d: &Derivation) -> Vec<Formula> {
    subderivations(d).iter().flat_map(|s| s.end.formulas()).collect()
}

fn judgment_vars(s: &Derivation) -> usize {
    fresh_var(&s.end.formulas())
}

#[test]
fn tarski_soundness_fuzz() {
    let mut rng = StdRng::seed_from_u64(7);
    for d in classical_corpus() {
        check(&d).unwrap();
        let sig = Signature::infer(&judgment_formulas(&d)).unwrap();
        let subs = subderivations(&d);
        for _ in 0..200 {
            let m = random_model(&sig, rng.gen_range(1..=3), &mut rng);
            for s in &subs {
                for env in Env::all(m.domain, judgment_vars(s)) {
                    assert!(m.entails_at(&env, s.ctx(), s.goal()).unwrap(), "{:?} under {m:?}", s.end);
                }
            }
        }
    }
}

#[test]
fn kripke_soundness_fuzz() {
    let mut rng = StdRng::seed_from_u64(11);
    for d in nd_corpus() {
        let sig = Signature::infer(&judgment_formulas(&d)).unwrap();
        let subs = subderivations(&d);
        for i in 0..200 {
            let k = random_kripke(&sig, rng.gen_range(1..=3), rng.gen_range(1..=2), i % 2 == 0, &mut rng);
            assert!(k.is_exploding());
            for s in &subs {
                for env in Env::all(k.domain(), judgment_vars(s)) {
                    for w in 0..k.worlds() {
                        assert!(k.entails_at(w, &env, s.ctx(), s.goal()).unwrap(), "{:?} at {w} in {k:?}", s.end);
                    }
                }
            }
        }
    }
}

fn refuted_small(phi: &Formula) -> bool {
    let bounds = Bounds { max_domain: 1, max_worlds: 2, ..Bounds::default() };
    match countermodel_kripke(phi, &bounds) {
        Ok(Countermodel::Kripke { model, env, world }) => {
            assert!(model.worlds() <= 2 && model.domain() == 1);
            assert!(!model.ksat(world, &env, phi).unwrap());
            true
        }
        Ok(other) => panic!("{other:?}"),
        Err(_) => false,
    }
}

#[test]
fn countermodel_battery() {
    for s in ["((p -> q) -> p) -> p", "~~p -> p"] {
        assert!(refuted_small(&parse_formula(s).unwrap()), "{s}");
    }
    // the fragment image of excluded middle is ~p -> ~p, which has a proof
    let image = de_morgan(&parse_formula(r"p \/ ~p").unwrap());
    assert_eq!(image, parse_formula("~p -> ~p").unwrap());
    assert!(!refuted_small(&image));
    for s in FRAGMENT_NON_THEOREMS.iter().filter(|s| !s.contains("forall")) {
        assert!(countermodel_kripke(&parse_formula(s).unwrap(), &Bounds::default()).is_ok(), "{s}");
    }
}

#[test]
fn theorems_are_never_refuted() {
    let budget = ProofSearchBudget::depth(14);
    let bounds = Bounds { max_domain: 2, max_worlds: 3, max_candidates: 200_000 };
    let mut theorems = parse_all(FRAGMENT_THEOREMS);
    theorems.extend(propositional(4).into_iter().filter(|f| f.is_fragment() && ljt_search(&[], f, &budget).is_ok()));
    for phi in &theorems {
        assert!(countermodel_kripke(phi, &bounds).is_err(), "{phi:?}");
        assert!(countermodel_tarski(phi, &bounds).is_err(), "{phi:?}");
    }
    for phi in parse_all(FULL_THEOREMS) {
        assert!(countermodel_tarski(&phi, &bounds).is_err(), "{phi:?}");
    }
}

#[test]
fn wkl_agrees_with_tree_lookup() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..200 {
        let depth = rng.gen_range(0..=8);
        let tree = random_tree(depth, rng.gen_range(0.4..0.9), &mut rng);
        for n in 0..=depth {
            let phi = wkl_encode(&tree, n).unwrap();
            let found = wkl_sat_any(&phi, n).unwrap();
            assert_eq!(found.is_some(), !tree.level(n).is_empty(), "level {n}");
            if let Some(a) = found {
                assert!(tree.contains(&a));
                assert_eq!(Some(&a), tree.level(n).first());
            }
        }
    }
}

#[test]
fn models_round_trip_through_json() {
    let mut rng = StdRng::seed_from_u64(5);
    let sig = Signature::finite(&[("f", 1), ("c", 0)], &[("P", 1), ("R", 2), ("p", 0)]).unwrap();
    for _ in 0..20 {
        let m = random_model(&sig, 2, &mut rng);
        assert_eq!(serde_json::from_str::<FiniteModel>(&serde_json::to_string(&m).unwrap()).unwrap(), m);
        let k = random_kripke(&sig, 3, 2, true, &mut rng);
        assert_eq!(serde_json::from_str::<FiniteKripke>(&serde_json::to_string(&k).unwrap()).unwrap(), k);
        let t = random_tree(6, 0.7, &mut rng);
        assert_eq!(serde_json::from_str::<TreeOracle>(&serde_json::to_string(&t).unwrap()).unwrap(), t);
    }
}
