//! HTTP JSON API: stateless logic endpoints and dialogue-game sessions.

mod error;
pub mod ops;
mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::cors::{Any, CorsLayer};
use tower_http::services::ServeDir;

use folwb_core::dialogue::{EngineState, GameSession, LegalMove, OMove, SessionState, Status, Turn, Variant};
use folwb_core::kernel::Derivation;
use folwb_core::syntax::{parse_term, print_formula, Term};

pub use error::{ApiError, ErrorKind};
pub use store::SessionStore;

#[derive(Clone, Debug)]
pub struct ServiceConfig {
    pub addr: SocketAddr,
    pub persist_dir: Option<PathBuf>,
    pub ttl: Duration,
    /// `None` allows any origin.
    pub cors_origin: Option<String>,
    pub ui_dir: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            addr: ([127, 0, 0, 1], 8080).into(),
            persist_dir: None,
            ttl: Duration::from_secs(3600),
            cors_origin: None,
            ui_dir: None,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match self.kind {
            ErrorKind::BadRequest => StatusCode::BAD_REQUEST,
            ErrorKind::NotFound => StatusCode::NOT_FOUND,
            ErrorKind::Conflict => StatusCode::CONFLICT,
            ErrorKind::Unprocessable => StatusCode::UNPROCESSABLE_ENTITY,
        };
        (status, Json(json!({ "error": self }))).into_response()
    }
}

type Reply<T> = Result<Json<T>, ApiError>;

/// Body extraction whose failures use the API error shape.
fn body<T>(b: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    b.map(|Json(v)| v).map_err(|e| ApiError::bad_request("malformed", e.body_text()))
}

fn stateless<Q, R>(
    f: fn(&Q) -> Result<R, ApiError>,
) -> impl Fn(Result<Json<Q>, JsonRejection>) -> std::future::Ready<Reply<R>> + Clone + Send + Sync + 'static
where
    Q: 'static,
    R: Serialize + 'static,
{
    move |b| std::future::ready(body(b).and_then(|q| f(&q)).map(Json))
}

#[derive(Debug, Deserialize)]
pub struct NewGame {
    pub variant: Variant,
    pub formula: ops::FormulaInput,
    #[serde(default)]
    pub proof: Option<Derivation>,
    #[serde(default)]
    pub term_menu: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    #[serde(default)]
    pub move_id: Option<usize>,
    #[serde(default)]
    pub term: Option<String>,
    #[serde(default, rename = "move")]
    pub mv: Option<OMove>,
}

#[derive(Debug, Serialize)]
pub struct GameView {
    pub id: String,
    pub variant: Variant,
    pub formula: String,
    pub term_menu: Vec<String>,
    pub status: Status,
    pub state: SessionState,
    pub history: Vec<Turn>,
    pub legal_moves: Vec<LegalMove>,
    pub engine: EngineState,
}

impl GameView {
    pub fn of(g: &GameSession) -> GameView {
        GameView {
            id: g.id.clone(),
            variant: g.variant,
            formula: print_formula(&g.formula),
            term_menu: g.term_menu.iter().map(folwb_core::syntax::print_term).collect(),
            status: g.status,
            state: g.state.clone(),
            history: g.history.clone(),
            legal_moves: g.legal_opponent_moves(),
            engine: g.engine_state(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MoveResult {
    /// The opponent move followed by the engine's reply.
    pub turns: Vec<Turn>,
    #[serde(flatten)]
    pub game: GameView,
}

async fn create_game(State(store): State<Arc<SessionStore>>, b: Result<Json<NewGame>, JsonRejection>) -> Reply<GameView> {
    let req = body(b)?;
    let formula = req.formula.resolve()?;
    let menu = req
        .term_menu
        .map(|ts| ts.iter().map(|t| parse_term(t)).collect::<Result<Vec<Term>, _>>())
        .transpose()?;
    let id = SessionStore::fresh_id();
    let g = tokio::task::spawn_blocking(move || GameSession::new(id, req.variant, formula, req.proof.as_ref(), menu))
        .await
        .map_err(|e| ApiError::unprocessable("internal", e.to_string()))??;
    let view = GameView::of(&g);
    store.insert(g)?;
    Ok(Json(view))
}

async fn get_game(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> Reply<GameView> {
    store.with(&id, |g| Ok(GameView::of(g))).map(Json)
}

fn play(g: &mut GameSession, req: MoveRequest) -> Result<Vec<Turn>, ApiError> {
    if g.status == Status::ProponentWon {
        return Err(folwb_core::dialogue::DialogueError::Finished.into());
    }
    let stale = |g: &GameSession, e: ApiError| {
        if e.code == "stale_move" || e.code == "illegal_move" {
            ApiError { legal_moves: Some(g.legal_opponent_moves()), ..e }
        } else {
            e
        }
    };
    let out = match (req.move_id, &req.mv) {
        (Some(id), None) => g.play(id, req.term.as_deref()),
        (None, Some(om)) => g.opponent_move(om),
        _ => return Err(ApiError::bad_request("malformed", "give exactly one of `move_id` and `move`")),
    };
    out.map_err(|e| stale(g, e.into()))
}

async fn post_move(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    b: Result<Json<MoveRequest>, JsonRejection>,
) -> Reply<MoveResult> {
    let req = body(b)?;
    store
        .with(&id, |g| {
            let turns = play(g, req)?;
            Ok(MoveResult { turns, game: GameView::of(g) })
        })
        .map(Json)
}

async fn healthz() -> Json<serde_json::Value> {
    Json(json!({ "ok": true }))
}

fn cors(origin: &Option<String>) -> CorsLayer {
    let layer = CorsLayer::new().allow_methods(Any).allow_headers(Any);
    match origin.as_deref().and_then(|o| HeaderValue::from_str(o).ok()) {
        Some(v) => layer.allow_origin(v),
        None => layer.allow_origin(Any),
    }
}

pub fn router(store: Arc<SessionStore>, config: &ServiceConfig) -> Router {
    let api = Router::new()
        .route("/parse", post(stateless(ops::parse)))
        .route("/check", post(stateless(ops::check)))
        .route("/normalize", post(stateless(ops::normalize)))
        .route("/eval/tarski", post(stateless(ops::eval_tarski)))
        .route("/eval/kripke", post(stateless(ops::eval_kripke)))
        .route("/eval/heyting", post(stateless(ops::eval_heyting)))
        .route("/countermodel", post(stateless(ops::countermodel)))
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game))
        .route("/games/{id}/moves", post(post_move))
        .route("/healthz", get(healthz))
        .with_state(store);
    let api = match &config.ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    };
    api.layer(cors(&config.cors_origin))
}

pub fn app(config: &ServiceConfig) -> Router {
    if let Some(dir) = &config.persist_dir {
        let _ = std::fs::create_dir_all(dir);
    }
    router(Arc::new(SessionStore::new(config.ttl, config.persist_dir.clone())), config)
}

pub async fn serve(config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(config.addr).await?;
    axum::serve(listener, app(&config)).await
}
