use folwb_core::corpus::{parse_all, propositional, FRAGMENT_NON_THEOREMS, FRAGMENT_THEOREMS, FULL_THEOREMS};
use folwb_core::dialogue::rules::{AttackKind, DefenseSet};
use folwb_core::dialogue::*;
use folwb_core::heyting::{eval_formula, small_heyting_algebras, AtomInterp};
use folwb_core::kernel::*;
use folwb_core::syntax::{parse_formula, Formula, Term};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn lj_provable(phi: &Formula) -> Option<Derivation> {
    if phi.is_fragment() {
        let d = ljt_search(&[], phi, &ProofSearchBudget::depth(16)).ok()?;
        ljt_to_lj(&d).ok()
    } else {
        lj_search(&[], phi, &ProofSearchBudget::depth(16)).ok()
    }
}

/// Valid in every Heyting algebra of size at most five under every valuation of `p`, `q`.
fn heyting_valid(phi: &Formula) -> bool {
    small_heyting_algebras().iter().all(|h| {
        (0..h.size).all(|a| {
            (0..h.size).all(|b| {
                let mut i = AtomInterp::constant(0);
                i.set("p", vec![], a);
                i.set("q", vec![], b);
                eval_formula(h, &i, phi) == h.top()
            })
        })
    })
}

fn root_judgment(phi: &Formula) -> Judgment {
    Judgment::LjdSeq { ctx: vec![], goals: DefenseSet::single(phi.clone()) }
}

#[test]
fn propositional_equivalences() {
    let b = GameBudget::default();
    let mut theorems = 0;
    for phi in propositional(5) {
        let lj = lj_provable(&phi);
        if let Some(d) = &lj {
            assert_eq!(check(d).unwrap(), Judgment::LjSeq { ctx: vec![], goal: phi.clone() });
        }
        if phi.is_fragment() {
            let ljt = ljt_search(&[], &phi, &ProofSearchBudget::depth(16)).is_ok();
            assert_eq!(ljt, lj.is_some(), "{phi:?}");
        }
        let e = e_win_search(&phi, &b, &[]);
        let d = d_win_search(&phi, &b, &[]);
        assert_eq!(lj.is_some(), e.is_ok(), "LJ vs E on {phi:?}: {e:?}");
        assert_eq!(e.is_ok(), d.is_ok(), "E vs D on {phi:?}");
        assert_eq!(lj.is_some(), heyting_valid(&phi), "semantics on {phi:?}");
        if let Err(err) = &e {
            assert!(matches!(err, DialogueError::NoStrategy | DialogueError::Atomic), "{phi:?}: {err}");
        }
        let (Ok(e), Ok(d)) = (e, d) else { continue };
        theorems += 1;
        verify_e(&e).unwrap();
        verify_d(&d).unwrap();
        let from_e = ljd_from_estrategy(&e).unwrap();
        assert_eq!(check(&from_e).unwrap(), root_judgment(&phi));
        assert_eq!(check(&ljd_from_dwin(&d).unwrap()).unwrap(), root_judgment(&phi));
        let unfolded = unfold_e(&strategy_from_ljd(&from_e).unwrap(), &[]).unwrap();
        verify_e(&unfolded).unwrap();
        assert_eq!(check(&ljd_from_estrategy(&unfolded).unwrap()).unwrap(), root_judgment(&phi));
        let back = lj_from_ljd(&from_e).unwrap();
        assert_eq!(check(&back).unwrap(), Judgment::LjSeq { ctx: vec![], goal: phi.clone() });
        let again = ljd_from_lj(lj.as_ref().unwrap()).unwrap();
        assert_eq!(check(&again).unwrap(), root_judgment(&phi));
    }
    assert!(theorems > 50, "{theorems}");
}

#[test]
fn first_order_round_trips() {
    let b = GameBudget::default();
    for phi in parse_all(FRAGMENT_THEOREMS).into_iter().chain(parse_all(FULL_THEOREMS)) {
        let lj = lj_provable(&phi).unwrap_or_else(|| panic!("{phi:?}"));
        let ljd = ljd_from_lj(&lj).unwrap();
        assert_eq!(check(&ljd).unwrap(), root_judgment(&phi));
        let lj2 = lj_from_ljd(&ljd).unwrap();
        assert_eq!(check(&lj2).unwrap(), Judgment::LjSeq { ctx: vec![], goal: phi.clone() });

        let menu = default_menu(&phi);
        let e = e_win_search(&phi, &b, &menu).unwrap_or_else(|err| panic!("{phi:?}: {err}"));
        verify_e(&e).unwrap();
        let extracted = ljd_from_estrategy(&e).unwrap();
        assert_eq!(check(&extracted).unwrap(), root_judgment(&phi));
        let unfolded = unfold_e(&strategy_from_ljd(&ljd).unwrap(), &menu).unwrap();
        verify_e(&unfolded).unwrap();
        assert_eq!(check(&ljd_from_estrategy(&unfolded).unwrap()).unwrap(), root_judgment(&phi));
        let d = d_win_search(&phi, &b, &menu).unwrap_or_else(|err| panic!("{phi:?}: {err}"));
        assert_eq!(check(&ljd_from_dwin(&d).unwrap()).unwrap(), root_judgment(&phi));
    }
}

#[test]
fn non_theorems_have_no_strategy() {
    let b = GameBudget { max_depth: 10, ..Default::default() };
    for phi in parse_all(FRAGMENT_NON_THEOREMS) {
        let menu = default_menu(&phi);
        assert!(e_win_search(&phi, &b, &menu).is_err(), "{phi:?}");
        assert!(d_win_search(&phi, &b, &menu).is_err(), "{phi:?}");
    }
    assert!(matches!(e_win_search(&f("p"), &b, &[]), Err(DialogueError::Atomic)));
    assert!(matches!(e_win_search(&Formula::Bot, &b, &[]), Err(DialogueError::NoStrategy)));
    let peirce = f("((p -> q) -> p) -> p");
    assert!(matches!(e_win_search(&peirce, &b, &[]), Err(DialogueError::NoStrategy)));
    assert!(d_win_search(&peirce, &b, &[]).is_err());
}

#[test]
fn identity_strategy_matches_its_derivation() {
    let phi = f("p -> p");
    let e = e_win_search(&phi, &GameBudget::default(), &[]).unwrap();
    let d = ljd_from_estrategy(&e).unwrap();
    let unfolded = unfold_e(&strategy_from_ljd(&d).unwrap(), &[]).unwrap();
    assert_eq!(unfolded.openings, e.openings);
    assert_eq!(unfolded.openings[0].1.mv, PMove::Defend { formula: f("p"), witness: None });

    let phi = f("false -> p");
    let e = e_win_search(&phi, &GameBudget::default(), &[]).unwrap();
    let d = ljd_from_estrategy(&e).unwrap();
    assert_eq!(d.premises[0].rule, Rule::L);
    assert_eq!(d.premises[0].data.formula, Some(Formula::Bot));
}

#[test]
fn ex_rules_convert() {
    for s in [r"(exists x. P(x) /\ Q(x)) -> exists y. P(y)", "(forall x. P(x)) -> exists x. P(x)"] {
        let phi = f(s);
        let lj = lj_search(&[], &phi, &ProofSearchBudget::depth(12)).unwrap();
        assert!(lj.count_rule(Rule::ER) > 0, "{s}");
        let ljd = ljd_from_lj(&lj).unwrap();
        assert_eq!(check(&ljd).unwrap(), root_judgment(&phi));
        assert!(matches!(
            lj_from_ljd(&eta(&[], &Formula::Bot, DefenseSet::empty(), None)),
            Err(DialogueError::NotSingleton | DialogueError::Kernel(_))
        ));
    }
}

#[test]
fn d_admissions_attacked_once() {
    let phi = f("(p -> q) -> p -> q");
    let mut g = GameSession::new("d", Variant::D, phi, None, None).unwrap();
    g.play(0, None).unwrap();
    let attack = g
        .legal_opponent_moves()
        .into_iter()
        .find(|m| matches!(m.mv, OMove::Attack { .. }))
        .expect("the proponent's defense can be attacked");
    g.opponent_move(&attack.mv).unwrap();
    match g.opponent_move(&attack.mv) {
        Err(DialogueError::Illegal { rule, message }) => {
            assert_eq!(rule, "OA");
            assert!(message.contains("only once"), "{message}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn s_and_d_examples() {
    for variant in [Variant::S, Variant::D] {
        let mut g = GameSession::new("x", variant, f("p -> p"), None, None).unwrap();
        g.play(0, None).unwrap();
        assert_eq!(g.status, Status::ProponentWon, "{variant:?}");
        let mut g = GameSession::new("x", variant, f("false -> p"), None, None).unwrap();
        let turns = g.play(0, None).unwrap();
        assert_eq!(turns[1].mv, Move::Proponent(PMove::Attack { target: Formula::Bot, kind: AttackKind::Bot }));
        assert_eq!(g.status, Status::ProponentWon);
    }
}

#[test]
fn sessions_accept_user_proofs() {
    let phi = f("(p -> q) -> (q -> r) -> p -> r");
    let ljt = ljt_search(&[], &phi, &ProofSearchBudget::default()).unwrap();
    let lj = ljt_to_lj(&ljt).unwrap();
    for proof in [&ljt, &lj] {
        let g = GameSession::new("u", Variant::E, phi.clone(), Some(proof), None).unwrap();
        assert_eq!(g.source, Source::Proof);
    }
    let wrong = ljt_search(&[], &f("p -> p"), &ProofSearchBudget::default()).unwrap();
    assert!(matches!(GameSession::new("u", Variant::E, phi, Some(&wrong), None), Err(DialogueError::WrongEnd(_))));
}

const TERMS: &[&str] = &["c", "f(c)", "x0", "x3", "g(c, x1)"];

fn playout(proto: &GameSession, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut g = proto.clone();
    for step in 0..10_000 {
        if g.status == Status::ProponentWon {
            replay(g.variant, &g.formula, &g.history).map_err(|e| e.to_string())?;
            return Ok(step);
        }
        let moves = g.legal_opponent_moves();
        let m = moves.choose(rng).ok_or("open game without opponent moves")?;
        let term = m.needs_term.then(|| {
            let menu: Vec<String> = g.term_menu.iter().map(folwb_core::syntax::print_term).collect();
            if rng.gen_bool(0.5) && !menu.is_empty() {
                menu.choose(rng).unwrap().clone()
            } else {
                TERMS.choose(rng).unwrap().to_string()
            }
        });
        g.play(m.id, term.as_deref()).map_err(|e| format!("{e} after {:?}", g.history))?;
    }
    Err("playout did not finish".into())
}

#[test]
fn random_playouts() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let corpus: Vec<Formula> = parse_all(FRAGMENT_THEOREMS).into_iter().chain(parse_all(FULL_THEOREMS)).collect();
    for phi in &corpus {
        for variant in [Variant::E, Variant::D, Variant::S] {
            let proto = GameSession::new("p", variant, phi.clone(), None, None).unwrap();
            for _ in 0..200 {
                if let Err(e) = playout(&proto, &mut rng) {
                    panic!("{variant:?} on {phi:?}: {e}");
                }
            }
        }
    }
}

#[test]
fn sessions_rebuild_and_serialize() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let phi = f("(forall x. P(x) -> Q(x)) -> (forall x. P(x)) -> forall x. Q(x)");
    for variant in [Variant::E, Variant::D, Variant::S] {
        let mut g = GameSession::new("r", variant, phi.clone(), None, None).unwrap();
        for _ in 0..3 {
            let moves = g.legal_opponent_moves();
            let Some(m) = moves.choose(&mut rng) else { break };
            g.play(m.id, Some("h(c)")).unwrap();
        }
        let json = serde_json::to_string(&g).unwrap();
        let restored: GameSession = serde_json::from_str(&json).unwrap();
        let rebuilt = restored.rebuild().unwrap();
        assert_eq!(rebuilt.state, g.state);
        assert_eq!(serde_json::to_string(&rebuilt).unwrap(), json);
        let first = &serde_json::to_value(g.legal_opponent_moves()).unwrap();
        assert!(first.as_array().is_none_or(|a| a.iter().all(|m| m.get("needs_term").is_some())));
    }
    let _ = Term::Var(0);
}
