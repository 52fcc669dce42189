//! Runs every acceptance criterion and prints one PASS/FAIL line for each.
//! The process fails when a criterion outside `EXPECTED_FAILURES` fails, or
//! when one listed there starts passing.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use folwb_core::corpus::{self, cut_pairs, nd_corpus, parse_all, propositional, FRAGMENT_THEOREMS, FULL_THEOREMS};
use folwb_core::dialogue::rules::DefenseSet;
use folwb_core::dialogue::*;
use folwb_core::heyting::*;
use folwb_core::kernel::*;
use folwb_core::models::*;
use folwb_core::nbe::{cut, normalize};
use folwb_core::syntax::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Criteria that cannot hold as stated; each still runs and prints FAIL.
const EXPECTED_FAILURES: &[&str] = &["countermodel battery"];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

// substitution algebra

fn random_term(rng: &mut StdRng, size: usize, vars: usize) -> Term {
    if size <= 1 || rng.gen_bool(0.3) {
        Term::Var(rng.gen_range(0..vars))
    } else {
        Term::app("f", vec![random_term(rng, size - 1, vars)])
    }
}

fn random_formula(rng: &mut StdRng, size: usize, vars: usize) -> Formula {
    if size <= 2 {
        return if size < 3 && rng.gen_bool(0.3) { Formula::Bot } else { Formula::atom("P", vec![random_term(rng, 2, vars), random_term(rng, 2, vars)]) };
    }
    match rng.gen_range(0..5) {
        0 => Formula::all(random_formula(rng, size - 1, vars + 1)),
        1 => Formula::ex(random_formula(rng, size - 1, vars + 1)),
        k => {
            let l = rng.gen_range(1..size - 1);
            let (a, b) = (random_formula(rng, l, vars), random_formula(rng, size - 1 - l, vars));
            match k {
                2 => Formula::imp(a, b),
                3 => Formula::conj(a, b),
                _ => Formula::disj(a, b),
            }
        }
    }
}

fn sample_substs() -> Vec<Subst> {
    let v = Term::Var;
    let fx = |t: Term| Term::app("f", vec![t]);
    let base = vec![
        Subst::id(),
        Subst::shift(),
        Subst::shift_by(3),
        Subst::single(fx(v(0))),
        Subst::single(v(2)),
        Subst::cons(fx(fx(v(1))), &Subst::shift()),
        Subst::new(vec![v(1), v(0)], 2),
        Subst::new(vec![fx(v(3))], 0),
        Subst::abstract_var(1),
    ];
    let mut out = base.clone();
    out.extend(base.iter().map(Subst::up));
    out.push(Subst::single(fx(v(0))).up_by(2));
    out
}

fn substitution_algebra() -> Outcome {
    let sig = Signature::finite(&[("f", 1)], &[("P", 2)]).unwrap();
    let formulas = corpus::first_order(&sig, 3, 5);
    let substs = sample_substs();
    let mut cases = 0u64;
    for phi in &formulas {
        ensure(phi.subst(&Subst::id()) == *phi, || format!("identity fails on {phi:?}"))?;
        for s in &substs {
            for t in &substs {
                cases += 1;
                ensure(phi.subst(s).subst(t) == phi.subst(&s.then(t)), || format!("{phi:?} under {s:?} ; {t:?}"))?;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..5000 {
        let size = rng.gen_range(1..=9);
        let phi = random_formula(&mut rng, size, 3);
        let s = Subst::new((0..3).map(|_| random_term(&mut rng, 3, 4)).collect(), rng.gen_range(0..4));
        let t = Subst::new((0..2).map(|_| random_term(&mut rng, 3, 4)).collect(), rng.gen_range(0..4));
        ensure(phi.subst(&Subst::id()) == phi, || format!("identity fails on {phi:?}"))?;
        ensure(phi.subst(&s).subst(&t) == phi.subst(&s.then(&t)), || format!("{phi:?} under {s:?} ; {t:?}"))?;
        cases += 1;
    }
    Ok(format!("{} exhaustive formulas, {cases} composition cases, 0 failures", formulas.len()))
}

fn displays() -> Outcome {
    let opts = ParseOptions { free_names: [("x".to_string(), 7), ("y".to_string(), 4)].into(), ..Default::default() };
    let phi = parse_formula_with("P(x, y) -> forall x. exists y. P(x, y)", &opts).map_err(|e| e.to_string())?;
    let want = Formula::imp(
        Formula::atom("P", vec![Term::Var(7), Term::Var(4)]),
        Formula::all(Formula::ex(Formula::atom("P", vec![Term::Var(1), Term::Var(0)]))),
    );
    ensure(phi == want, || format!("representation {phi:?}"))?;
    for (src, image) in [(r"A /\ B", "~(A -> ~B)"), (r"A \/ B", "~A -> B"), ("exists x. P(x)", "~forall x. ~P(x)")] {
        ensure(de_morgan(&f(src)) == f(image), || format!("de Morgan clause for {src}"))?;
    }
    let tree = TreeOracle::full_after_tt(3);
    let phi3 = wkl_encode(&tree, 3).map_err(|e| e.to_string())?;
    let want = f(r"P0 /\ (P1 /\ P2) \/ (P0 /\ (P1 /\ ~P2) \/ (P0 /\ (~P1 /\ P2) \/ P0 /\ (~P1 /\ ~P2)))");
    ensure(phi3 == want, || format!("φ3 printed as {}", print_formula(&phi3)))?;
    Ok("representation, three de Morgan clauses, level-3 tree formula".into())
}

fn nbe_criterion() -> Outcome {
    let corpus = nd_corpus();
    ensure(corpus.len() == 50, || format!("corpus has {} proofs", corpus.len()))?;
    let detours = corpus.iter().filter(|d| d.rule == Rule::IE && d.premises[0].rule == Rule::II).count();
    let explosions = corpus.iter().filter(|d| d.count_rule(Rule::E) > 0).count();
    ensure(detours >= 10 && explosions >= 5, || format!("{detours} detours, {explosions} with E"))?;
    for d in &corpus {
        let end = check(d).map_err(|e| e.to_string())?;
        let n = normalize(d).map_err(|e| format!("{e} on {end:?}"))?;
        let nend = check(&n).map_err(|e| e.to_string())?;
        ensure(nend.ctx() == end.ctx() && nend.goal() == end.goal(), || format!("end sequent changed: {end:?}"))?;
    }
    let pairs = cut_pairs(20, 200);
    ensure(pairs.len() == 200, || format!("{} pairs", pairs.len()))?;
    for (d1, d2) in &pairs {
        let out = cut(d1, d2).map_err(|e| e.to_string())?;
        let j = check(&out).map_err(|e| e.to_string())?;
        let Judgment::LjtFocus { ctx, goal, .. } = &d2.end else { return Err("unfocused right premise".into()) };
        ensure(j == Judgment::LjtSeq { ctx: ctx.clone(), goal: goal.clone() }, || format!("cut produced {j:?}"))?;
        ensure(out.calc == Calculus::Ljt && out.count_rule(Rule::IE) == 0, || "cut left a non-LJT node".into())?;
    }
    Ok(format!("50/50 normalize ({detours} detours, {explosions} with E); 200/200 cuts"))
}

fn subderivations(d: &Derivation) -> Vec<&Derivation> {
    let mut out = vec![d];
    for p in &d.premises {
        out.extend(subderivations(p));
    }
    out
}

fn soundness_fuzz() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut checks = 0u64;
    let classical = corpus::classical_corpus();
    for d in &classical {
        let subs = subderivations(d);
        let sig = Signature::infer(&subs.iter().flat_map(|s| s.end.formulas()).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
        for _ in 0..200 {
            let m = random_model(&sig, rng.gen_range(1..=3), &mut rng);
            for s in &subs {
                for env in Env::all(m.domain, fresh_var(&s.end.formulas())) {
                    checks += 1;
                    ensure(m.entails_at(&env, s.ctx(), s.goal()).map_err(|e| e.to_string())?, || format!("Tarski violation at {:?}", s.end))?;
                }
            }
        }
    }
    for d in &nd_corpus() {
        let subs = subderivations(d);
        let sig = Signature::infer(&subs.iter().flat_map(|s| s.end.formulas()).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
        for i in 0..200 {
            let k = random_kripke(&sig, rng.gen_range(1..=3), rng.gen_range(1..=2), i % 2 == 0, &mut rng);
            ensure(k.is_exploding(), || "generated model violates explosion".into())?;
            for s in &subs {
                for env in Env::all(k.domain(), fresh_var(&s.end.formulas())) {
                    for w in 0..k.worlds() {
                        checks += 1;
                        ensure(k.entails_at(w, &env, s.ctx(), s.goal()).map_err(|e| e.to_string())?, || format!("Kripke violation at {:?}", s.end))?;
                    }
                }
            }
        }
    }
    Ok(format!("0 violations in {checks} judgment checks ({} classical, 50 intuitionistic derivations)", classical.len()))
}

fn countermodel_battery() -> Outcome {
    let small = Bounds { max_domain: 1, max_worlds: 2, ..Bounds::default() };
    let mut problems = Vec::new();
    let targets = [("Peirce", f("((p -> q) -> p) -> p")), ("~~p -> p", f("~~p -> p")), ("image of p \\/ ~p", de_morgan(&f(r"p \/ ~p")))];
    for (name, phi) in &targets {
        match countermodel_kripke(phi, &small) {
            Ok(Countermodel::Kripke { model, env, world }) if !model.ksat(world, &env, phi).unwrap_or(true) => {}
            Ok(other) => problems.push(format!("{name}: bogus countermodel {other:?}")),
            Err(_) => problems.push(format!("{name} = {} not refuted within 2 worlds, domain 1", print_formula(phi))),
        }
    }
    let budget = ProofSearchBudget::depth(14);
    let bounds = Bounds { max_domain: 2, max_worlds: 3, max_candidates: 200_000 };
    let mut theorems = parse_all(FRAGMENT_THEOREMS);
    theorems.extend(propositional(4).into_iter().filter(|phi| phi.is_fragment() && ljt_search(&[], phi, &budget).is_ok()));
    for phi in &theorems {
        for b in [small, bounds] {
            if countermodel_kripke(phi, &b).is_ok() || countermodel_tarski(phi, &b).is_ok() {
                problems.push(format!("provable {} refuted", print_formula(phi)));
            }
        }
    }
    if problems.is_empty() {
        Ok(format!("3 refutations; {} provable formulas never refuted", theorems.len()))
    } else {
        Err(problems.join("; "))
    }
}

fn heyting_suite() -> Outcome {
    let (mut heyting, mut other) = (0, 0);
    for n in 1..=5 {
        for h in lattices(n) {
            let is_heyting = check_heyting(&h).ok();
            // finite lattices are Heyting exactly when distributive
            let distributive = distributivity_check(&h).ok();
            ensure(is_heyting == distributive, || format!("classification disagrees with distributivity on {:?}", h.le))?;
            if is_heyting {
                heyting += 1;
                let c = macneille(&h);
                ensure(check_heyting(&c.algebra).ok(), || "completion is not Heyting".into())?;
                let r = embedding_report(&h, &c);
                ensure(r.ok(), || format!("embedding: {:?}", r.violations))?;
            } else {
                other += 1;
            }
        }
    }
    for k in 0..=3 {
        let b = FiniteHeyting::boolean(k);
        ensure(check_heyting(&b).ok() && b.is_boolean(), || format!("2^{k} is not Boolean"))?;
        ensure(macneille(&b).algebra.is_boolean(), || format!("completion of 2^{k} is not Boolean"))?;
    }
    Ok(format!("{heyting} Heyting, {other} non-Heyting labelled lattices; Boolean algebras up to 8 elements preserved"))
}

fn quantifier_representatives() -> Outcome {
    let mut rng = StdRng::seed_from_u64(29);
    let mut algebras = small_heyting_algebras().to_vec();
    algebras.push(FiniteHeyting::boolean(3));
    let funcs = vec![(Sym::new("c"), 0), (Sym::new("f"), 1)];
    for round in 0..500 {
        let h = &algebras[rng.gen_range(0..algebras.len())];
        let mut i = AtomInterp::constant(rng.gen_range(0..h.size));
        for _ in 0..rng.gen_range(0..=3) {
            let t = if rng.gen_bool(0.5) { Term::Var(rng.gen_range(0..2)) } else { Term::app("f", vec![Term::constant("c")]) };
            let key = if rng.gen_bool(0.5) { ("Q", vec![t]) } else { ("p", vec![]) };
            i.set(key.0, key.1, rng.gen_range(0..h.size));
        }
        let phi = {
            let size = rng.gen_range(1..=4);
            let mut r = StdRng::seed_from_u64(rng.gen());
            hey_formula(&mut r, size, 1)
        };
        let vars = phi.free_vars().into_iter().chain(i.support.keys().flat_map(|(_, a)| a.iter().flat_map(Term::free_vars))).max().map_or(0, |m| m + 1);
        let all = terms_up_to(&funcs, vars + 3, 6);
        let (fast, slow) = (eval_formula(h, &i, &phi), eval_over(h, &i, &all, &phi));
        ensure(h.equiv(fast, slow), || format!("round {round}: {} gives {fast} vs {slow}", print_formula(&phi)))?;
    }
    Ok("500/500 triples agree with terms of size ≤ 6".into())
}

fn hey_formula(rng: &mut StdRng, size: usize, vars: usize) -> Formula {
    if size <= 1 {
        return match rng.gen_range(0..4) {
            0 => Formula::Bot,
            1 => Formula::prop("p"),
            _ => Formula::atom("Q", vec![Term::Var(rng.gen_range(0..vars))]),
        };
    }
    match rng.gen_range(0..5) {
        0 => Formula::all(hey_formula(rng, size - 1, vars + 1)),
        1 => Formula::ex(hey_formula(rng, size - 1, vars + 1)),
        k if size >= 3 => {
            let l = rng.gen_range(1..size - 1);
            let (a, b) = (hey_formula(rng, l, vars), hey_formula(rng, size - 1 - l, vars));
            match k {
                2 => Formula::imp(a, b),
                3 => Formula::conj(a, b),
                _ => Formula::disj(a, b),
            }
        }
        _ => Formula::all(hey_formula(rng, size - 1, vars + 1)),
    }
}

fn dialogue_equivalences() -> Outcome {
    let budget = GameBudget::default();
    let search = ProofSearchBudget::depth(16);
    let root = |phi: &Formula| Judgment::LjdSeq { ctx: vec![], goals: DefenseSet::single(phi.clone()) };
    let mut theorems = 0;
    let formulas = propositional(4);
    for phi in &formulas {
        let lj = if phi.is_fragment() {
            ljt_search(&[], phi, &search).ok().map(|d| ljt_to_lj(&d).map_err(|e| e.to_string())).transpose()?
        } else {
            lj_search(&[], phi, &search).ok()
        };
        let ljt = phi.is_fragment().then(|| ljt_search(&[], phi, &search).is_ok());
        let e = e_win_search(phi, &budget, &[]);
        let d = d_win_search(phi, &budget, &[]);
        let shown = print_formula(phi);
        if let Some(ljt) = ljt {
            ensure(ljt == lj.is_some(), || format!("LJT vs LJ on {shown}"))?;
        }
        ensure(lj.is_some() == e.is_ok() && e.is_ok() == d.is_ok(), || format!("LJ/E/D disagree on {shown}"))?;
        let (Ok(e), Ok(dwin)) = (e, d) else { continue };
        theorems += 1;
        let from_e = ljd_from_estrategy(&e).map_err(|x| x.to_string())?;
        ensure(check(&from_e).ok() == Some(root(phi)), || format!("E extraction on {shown}"))?;
        ensure(check(&ljd_from_dwin(&dwin).map_err(|x| x.to_string())?).ok() == Some(root(phi)), || format!("D extraction on {shown}"))?;
        let unfolded = unfold_e(&strategy_from_ljd(&from_e).map_err(|x| x.to_string())?, &[]).map_err(|x| x.to_string())?;
        verify_e(&unfolded).map_err(|x| x.to_string())?;
        ensure(check(&ljd_from_estrategy(&unfolded).map_err(|x| x.to_string())?).ok() == Some(root(phi)), || format!("round trip on {shown}"))?;
    }
    Ok(format!("{} formulas, {theorems} theorems; all four sets agree; round trips check", formulas.len()))
}

const TERMS: &[&str] = &["c", "f(c)", "x0", "x3", "g(c, x1)"];

fn playout(proto: &GameSession, rng: &mut StdRng) -> Result<(), String> {
    let mut g = proto.clone();
    for _ in 0..10_000 {
        if g.status == Status::ProponentWon {
            return replay(g.variant, &g.formula, &g.history).map(|_| ()).map_err(|e| e.to_string());
        }
        let moves = g.legal_opponent_moves();
        let m = moves.choose(rng).ok_or("open game without opponent moves")?;
        let term = m.needs_term.then(|| {
            if rng.gen_bool(0.5) && !g.term_menu.is_empty() {
                print_term(g.term_menu.choose(rng).unwrap())
            } else {
                TERMS.choose(rng).unwrap().to_string()
            }
        });
        g.play(m.id, term.as_deref()).map_err(|e| e.to_string())?;
    }
    Err("playout did not finish".into())
}

fn strategy_robustness() -> Outcome {
    let corpus: Vec<Formula> = parse_all(FRAGMENT_THEOREMS).into_iter().chain(parse_all(FULL_THEOREMS)).collect();
    let results: Vec<Result<(), String>> = std::thread::scope(|s| {
        let handles: Vec<_> = corpus
            .iter()
            .enumerate()
            .map(|(i, phi)| {
                s.spawn(move || {
                    let mut rng = StdRng::seed_from_u64(45 + i as u64);
                    for variant in [Variant::E, Variant::D, Variant::S] {
                        let proto = GameSession::new("p", variant, phi.clone(), None, None).map_err(|e| e.to_string())?;
                        for _ in 0..1000 {
                            playout(&proto, &mut rng).map_err(|e| format!("{variant:?} on {}: {e}", print_formula(phi)))?;
                        }
                    }
                    Ok(())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("playout thread")).collect()
    });
    results.into_iter().collect::<Result<Vec<()>, String>>()?;
    Ok(format!("{} theorems × 3 variants × 1000 playouts won", corpus.len()))
}

fn random_tree_of(rng: &mut StdRng) -> TreeOracle {
    let depth = rng.gen_range(0..=8);
    let keep = rng.gen_range(0.4..0.9);
    random_tree(depth, keep, rng)
}

fn wkl_criterion() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let mut levels = 0;
    for _ in 0..200 {
        let tree = random_tree_of(&mut rng);
        for n in 0..=tree.depth() {
            let sat = wkl_sat_any(&wkl_encode(&tree, n).map_err(|e| e.to_string())?, n).map_err(|e| e.to_string())?;
            let exists = (0..1u32 << n).any(|code| tree.contains(&(0..n).map(|i| code >> i & 1 == 1).collect::<Vec<_>>()));
            ensure(sat.is_some() == exists, || format!("level {n} of {tree:?}"))?;
            levels += 1;
        }
    }
    Ok(format!("200 trees, {levels} levels agree"))
}

fn folwb(args: &[&str], dir: &Path, stdin: Option<&str>) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_folwb"));
    cmd.args(args).current_dir(dir);
    let out = match stdin {
        Some(input) => {
            use std::io::Write;
            let mut child = cmd.stdin(std::process::Stdio::piped()).stdout(std::process::Stdio::piped()).spawn().unwrap();
            child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
            child.wait_with_output().unwrap()
        }
        None => cmd.output().unwrap(),
    };
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = dir.path();
    let write = |name: &str, v: String| std::fs::write(p.join(name), v).unwrap();
    let nd = corpus::detour(nd_corpus().remove(3));
    write("nd.json", serde_json::to_string(&nd).unwrap());
    write("algebra.json", serde_json::to_string(&FiniteHeyting::chain(3)).unwrap());
    write("interp.json", r#"{"support": {"p": 1}, "default": 0}"#.into());
    write("tree.json", serde_json::to_string(&TreeOracle::full_after_tt(3)).unwrap());
    let (_, cm) = folwb(&["countermodel", "-f", "((p -> q) -> p) -> p"], p, None);
    let cm: serde_json::Value = serde_json::from_slice(&cm).map_err(|e| e.to_string())?;
    write("kripke.json", cm["model"].to_string());
    let (_, tm) = folwb(&["countermodel", "--tarski", "-f", "p -> q"], p, None);
    let tm: serde_json::Value = serde_json::from_slice(&tm).map_err(|e| e.to_string())?;
    write("model.json", tm["model"].to_string());

    let runs: Vec<(Vec<&str>, Option<&str>, i32)> = vec![
        (vec!["fmt", "-f", "forall x. P(x)   -> Q(x)"], None, 0),
        (vec!["fmt", "-f", "P(x,"], None, 2),
        (vec!["check", "nd.json"], None, 0),
        (vec!["check", "--calc", "ljt", "nd.json"], None, 1),
        (vec!["normalize", "nd.json"], None, 0),
        (vec!["prove", "-f", "(p -> q -> r) -> (p -> q) -> p -> r"], None, 0),
        (vec!["prove", "--calc", "lj", "-f", r"p /\ q -> q /\ p"], None, 0),
        (vec!["prove", "-f", "((p -> q) -> p) -> p", "--budget", "6"], None, 1),
        (vec!["eval", "--model", "model.json", "-f", "p -> q"], None, 1),
        (vec!["eval", "--kripke", "kripke.json", "-f", "p -> p"], None, 0),
        (vec!["eval", "--algebra", "algebra.json", "--interp", "interp.json", "-f", "~~(p -> p)"], None, 0),
        (vec!["countermodel", "--kripke", "-f", "((p -> q) -> p) -> p"], None, 0),
        (vec!["countermodel", "-f", "p -> p"], None, 1),
        (vec!["translate", "--demorgan", "-f", r"exists x. P(x) \/ q"], None, 0),
        (vec!["translate", "--dn", "-f", r"p \/ ~p"], None, 0),
        (vec!["translate", "--close", "-f", "P(x0, x1)"], None, 0),
        (vec!["wkl-encode", "--tree", "tree.json", "--depth", "3"], None, 0),
        (vec!["game", "--variant", "e", "-f", "false -> P"], Some("0\n"), 0),
        (vec!["--json", "game", "--variant", "d", "-f", "p -> q -> p"], Some("0\n0\n0\n"), 0),
        (vec!["--json", "countermodel", "-f", "~~p -> p"], None, 0),
        (vec!["--json", "fmt", "-f", "p ->"], None, 2),
    ];
    let mut derivations = 0;
    for (args, input, code) in &runs {
        let a = folwb(args, p, *input);
        let b = folwb(args, p, *input);
        ensure(a == b, || format!("{args:?} differs between runs"))?;
        ensure(a.0 == *code, || format!("{args:?} exited {} (wanted {code}): {}", a.0, String::from_utf8_lossy(&a.1)))?;
        if a.0 == 0 && matches!(args[0], "prove" | "normalize") {
            std::fs::write(p.join("out.json"), &a.1).unwrap();
            let (c, _) = folwb(&["check", "out.json"], p, None);
            ensure(c == 0, || format!("output of {args:?} does not re-check"))?;
            derivations += 1;
        }
    }
    Ok(format!("{} invocations byte-identical; {derivations} emitted derivations re-check", runs.len()))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("substitution algebra", substitution_algebra),
        ("display reproduction", displays),
        ("NBE cut-elimination", nbe_criterion),
        ("soundness fuzz", soundness_fuzz),
        ("countermodel battery", countermodel_battery),
        ("Heyting suite", heyting_suite),
        ("quantifier representatives", quantifier_representatives),
        ("dialogue equivalences", dialogue_equivalences),
        ("strategy robustness", strategy_robustness),
        ("WKL encoder", wkl_criterion),
        ("CLI determinism", cli_determinism),
    ];
    let results: BTreeMap<usize, Outcome> = std::thread::scope(|s| {
        let hs: Vec<_> = criteria.iter().enumerate().map(|(i, (_, c))| (i, s.spawn(c))).collect();
        hs.into_iter().map(|(i, h)| (i, h.join().unwrap_or_else(|_| Err("panicked".into())))).collect()
    });
    let mut unexpected = 0;
    for (i, (name, _)) in criteria.iter().enumerate() {
        let expected_fail = EXPECTED_FAILURES.contains(name);
        match &results[&i] {
            Ok(detail) => {
                println!("PASS {name}: {detail}");
                unexpected += expected_fail as usize;
            }
            Err(detail) => {
                println!("FAIL {name}: {detail}{}", if expected_fail { " (expected)" } else { "" });
                unexpected += !expected_fail as usize;
            }
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria did not match their expected outcome");
        std::process::exit(1);
    }
}
