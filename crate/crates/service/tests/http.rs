use std::sync::Arc;
use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use tower::ServiceExt;

use folwb_core::heyting::small_heyting_algebras;
use folwb_service::{app, router, ServiceConfig, SessionStore};

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = match body {
        Some(v) => req.body(Body::from(v.to_string())).unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

fn fresh() -> Router {
    app(&ServiceConfig::default())
}

#[tokio::test]
async fn health_and_parse() {
    let app = fresh();
    assert_eq!(call(&app, "GET", "/healthz", None).await, (StatusCode::OK, json!({"ok": true})));
    let (s, v) = call(&app, "POST", "/parse", Some(json!({"formula": "forall x. P(x) -> Q(x)"}))).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["printed"], "forall x0. P(x0) -> Q(x0)");
    assert_eq!(v["formula"], json!({"all": {"impl": [{"atom": ["P", [{"var": 0}]]}, {"atom": ["Q", [{"var": 0}]]}]}}));
    let (s, v) = call(&app, "POST", "/parse", Some(json!({"formula": "P(x,"}))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"]["code"], "parse_error");
    assert!(v["error"]["message"].as_str().unwrap().starts_with("1:"));
    let (s, v) = call(&app, "POST", "/parse", Some(json!({"nope": 1}))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"]["code"], "malformed");
}

#[tokio::test]
async fn check_and_normalize() {
    let app = fresh();
    let d = folwb_core::corpus::detour(
        folwb_core::kernel::ljt_to_nd(
            &folwb_core::kernel::ljt_search(&[], &folwb_core::syntax::parse_formula("p -> p").unwrap(), &Default::default()).unwrap(),
        )
        .unwrap(),
    );
    let d = serde_json::to_value(&d).unwrap();
    let (s, v) = call(&app, "POST", "/check", Some(json!({"derivation": d}))).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    assert_eq!(v["calc"], "ndi");
    let (s, v) = call(&app, "POST", "/normalize", Some(json!({"derivation": d}))).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    let (s, n) = call(&app, "POST", "/check", Some(json!({"derivation": v["derivation"]}))).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(n["end"]["ljt_seq"], call(&app, "POST", "/check", Some(json!({"derivation": d}))).await.1["end"]["nd_seq"]);

    let mut bad = d.clone();
    bad["end"]["nd_seq"]["goal"] = json!({"bot": true});
    let (s, v) = call(&app, "POST", "/check", Some(json!({"derivation": bad}))).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["error"]["code"], "check_failed");
    assert!(v["error"]["rule"].is_string());
}

#[tokio::test]
async fn evaluation_endpoints() {
    let app = fresh();
    let peirce = "((p -> q) -> p) -> p";
    let (s, v) = call(&app, "POST", "/countermodel", Some(json!({"formula": peirce}))).await;
    assert_eq!(s, StatusCode::OK);
    let cm = &v["countermodel"];
    assert_eq!(cm["mode"], "kripke");
    let (s, k) = call(&app, "POST", "/eval/kripke", Some(json!({"model": cm["model"], "formula": peirce, "env": cm["env"], "world": cm["world"]}))).await;
    assert_eq!(s, StatusCode::OK, "{k}");
    assert_eq!(k["value"], false);

    let (_, t) = call(&app, "POST", "/countermodel", Some(json!({"formula": "p -> q", "mode": "tarski"}))).await;
    let (s, v) = call(&app, "POST", "/eval/tarski", Some(json!({"model": t["countermodel"]["model"], "formula": "p -> q"}))).await;
    assert_eq!((s, v["value"].clone()), (StatusCode::OK, json!(false)));
    let (s, v) = call(&app, "POST", "/countermodel", Some(json!({"formula": "p -> p"}))).await;
    assert_eq!((s, v["countermodel"].clone()), (StatusCode::OK, Value::Null));
    let (s, v) = call(&app, "POST", "/countermodel", Some(json!({"formula": r"p \/ ~p"}))).await;
    assert_eq!((s, v["error"]["code"].clone()), (StatusCode::UNPROCESSABLE_ENTITY, json!("not_fragment")));

    // the three-element chain 0 < 1 < 2: ~~p at the middle is the top
    let chain = small_heyting_algebras().iter().find(|h| h.size == 3).unwrap();
    let mid = (0..3).find(|&x| x != chain.bot && (0..3).any(|y| y != x && !chain.le[y][x])).unwrap();
    let body = json!({"algebra": chain, "interp": {"support": {"p": mid}, "default": chain.bot}, "formula": "~~p"});
    let (s, v) = call(&app, "POST", "/eval/heyting", Some(body)).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    assert_eq!(v["top"], true);
    let body = json!({"algebra": chain, "interp": {"support": {"p": mid}, "default": chain.bot}, "formula": r"p \/ ~p"});
    assert_eq!(call(&app, "POST", "/eval/heyting", Some(body)).await.1["top"], false);
}

#[tokio::test]
async fn bot_game_to_victory() {
    let app = fresh();
    let (s, g) = call(&app, "POST", "/games", Some(json!({"variant": "e", "formula": "false -> P"}))).await;
    assert_eq!(s, StatusCode::OK, "{g}");
    let id = g["id"].as_str().unwrap().to_string();
    assert_eq!(id.len(), 32);
    assert_eq!(g["status"], "open");
    let legal = g["legal_moves"].as_array().unwrap();
    assert_eq!(legal.len(), 1);
    let (s, r) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"move_id": legal[0]["id"]}))).await;
    assert_eq!(s, StatusCode::OK, "{r}");
    assert_eq!(r["status"], "proponent_won");
    let reply = &r["turns"][1];
    assert_eq!(reply["mover"], "proponent");
    assert_eq!(reply["rule"], "PA");
    assert_eq!(reply["move"]["proponent"]["target"], json!({"bot": true}));
    let (s, again) = call(&app, "GET", &format!("/games/{id}"), None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(again["history"], r["history"]);
    let (s, v) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"move_id": 0}))).await;
    assert_eq!((s, v["error"]["code"].clone()), (StatusCode::CONFLICT, json!("game_over")));
}

#[tokio::test]
async fn error_contract() {
    let app = fresh();
    let (s, v) = call(&app, "GET", "/games/0123456789abcdef0123456789abcdef", None).await;
    assert_eq!((s, v["error"]["code"].clone()), (StatusCode::NOT_FOUND, json!("unknown_session")));
    let (s, _) = call(&app, "POST", "/games/nope/moves", Some(json!({"move_id": 0}))).await;
    assert_eq!(s, StatusCode::NOT_FOUND);

    let (_, g) = call(&app, "POST", "/games", Some(json!({"variant": "d", "formula": "p -> q -> p"}))).await;
    let id = g["id"].as_str().unwrap();
    let (s, v) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"move_id": 7}))).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["error"]["code"], "stale_move");
    assert_eq!(v["error"]["legal_moves"], g["legal_moves"]);

    let wrong = json!({"type": "defend", "formula": {"atom": ["p", []]}});
    let (s, v) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"move": wrong}))).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["error"]["code"], "illegal_move");
    assert!(v["error"]["rule"].is_string());

    let (s, v) = call(&app, "POST", "/games", Some(json!({"variant": "e", "formula": "((p -> q) -> p) -> p"}))).await;
    assert_eq!((s, v["error"]["code"].clone()), (StatusCode::UNPROCESSABLE_ENTITY, json!("no_strategy")));
    let (s, v) = call(&app, "POST", "/games", Some(json!({"variant": "x", "formula": "p"}))).await;
    assert_eq!((s, v["error"]["code"].clone()), (StatusCode::BAD_REQUEST, json!("malformed")));
}

#[tokio::test]
async fn term_slots() {
    let app = fresh();
    let body = json!({"variant": "e", "formula": "(forall x. P(x)) -> forall y. P(f(y))", "term_menu": ["c"]});
    let (s, g) = call(&app, "POST", "/games", Some(body)).await;
    assert_eq!(s, StatusCode::OK, "{g}");
    let id = g["id"].as_str().unwrap();
    let (_, r) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"move_id": 0}))).await;
    let slot = r["legal_moves"].as_array().unwrap().iter().find(|m| m["needs_term"] == true).expect("a term slot").clone();
    let (s, v) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"move_id": slot["id"]}))).await;
    assert_eq!((s, v["error"]["code"].clone()), (StatusCode::UNPROCESSABLE_ENTITY, json!("bad_term")));
    let (s, v) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"move_id": slot["id"], "term": "g(c)"}))).await;
    assert_eq!(s, StatusCode::OK, "{v}");
}

async fn random_game(app: Router, seed: u64) -> Value {
    let mut rng = StdRng::seed_from_u64(seed);
    let formulas = ["p -> p", "p -> q -> p", "(p -> q) -> (q -> r) -> p -> r", "false -> P", "~~~p -> ~p", "(forall x. P(x)) -> P(c)"];
    let variant = ["e", "d", "s"][rng.gen_range(0..3)];
    let formula = formulas.choose(&mut rng).unwrap();
    let (s, mut g) = call(&app, "POST", "/games", Some(json!({"variant": variant, "formula": formula}))).await;
    assert_eq!(s, StatusCode::OK, "{g}");
    let id = g["id"].as_str().unwrap().to_string();
    for _ in 0..100 {
        if g["status"] == "proponent_won" {
            break;
        }
        let legal = g["legal_moves"].as_array().unwrap().clone();
        let m = legal.choose(&mut rng).unwrap();
        let term = ["c", "x9", "f(c)"].choose(&mut rng).unwrap();
        let (s, next) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"move_id": m["id"], "term": term}))).await;
        assert_eq!(s, StatusCode::OK, "{next}");
        assert_eq!(next["id"], id);
        g = next;
    }
    assert_eq!(g["status"], "proponent_won");
    assert_eq!(call(&app, "GET", &format!("/games/{id}"), None).await.1["history"], g["history"]);
    g
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn hundred_concurrent_sessions() {
    let store = Arc::new(SessionStore::new(Duration::from_secs(600), None));
    let app = router(store.clone(), &ServiceConfig::default());
    let tasks: Vec<_> = (0..100).map(|i| tokio::spawn(random_game(app.clone(), i))).collect();
    let mut ids = Vec::new();
    for t in tasks {
        ids.push(t.await.unwrap()["id"].as_str().unwrap().to_string());
    }
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), 100);
    assert_eq!(store.len(), 100);
}

#[tokio::test]
async fn sessions_survive_a_restart() {
    let dir = tempfile::tempdir().unwrap();
    let config = ServiceConfig { persist_dir: Some(dir.path().to_path_buf()), ..ServiceConfig::default() };
    let first = app(&config);
    let (_, g) = call(&first, "POST", "/games", Some(json!({"variant": "s", "formula": "p -> q -> p"}))).await;
    let id = g["id"].as_str().unwrap().to_string();
    let (_, played) = call(&first, "POST", &format!("/games/{id}/moves"), Some(json!({"move_id": 0}))).await;
    drop(first);
    let second = app(&config);
    let (s, back) = call(&second, "GET", &format!("/games/{id}"), None).await;
    assert_eq!(s, StatusCode::OK, "{back}");
    assert_eq!(back["history"], played["history"]);
    assert_eq!(back["legal_moves"], played["legal_moves"]);

    // a tampered log no longer replays
    let path = dir.path().join(format!("{id}.json"));
    let mut stored: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    stored["history"][1]["rule"] = json!("PA");
    std::fs::write(&path, stored.to_string()).unwrap();
    let (s, _) = call(&app(&config), "GET", &format!("/games/{id}"), None).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn cors_headers() {
    let config = ServiceConfig { cors_origin: Some("http://localhost:5173".into()), ..ServiceConfig::default() };
    let app = app(&config);
    let req = Request::builder().uri("/healthz").header("origin", "http://localhost:5173").body(Body::empty()).unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert_eq!(resp.headers()["access-control-allow-origin"], "http://localhost:5173");
}
