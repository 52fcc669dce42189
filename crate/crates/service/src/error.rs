use serde::Serialize;

use folwb_core::dialogue::{DialogueError, LegalMove};
use folwb_core::heyting::HeytingError;
use folwb_core::kernel::{CheckError, KernelError, SearchError};
use folwb_core::models::ModelError;
use folwb_core::nbe::NbeError;
use folwb_core::syntax::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    BadRequest,
    NotFound,
    Conflict,
    Unprocessable,
}

/// The `{"code", "message", "rule"?}` payload shared by the CLI envelope and HTTP errors.
#[derive(Clone, Debug, Serialize, thiserror::Error)]
#[error("{code}: {message}")]
pub struct ApiError {
    #[serde(skip)]
    pub kind: ErrorKind,
    pub code: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub legal_moves: Option<Vec<LegalMove>>,
}

impl ApiError {
    pub fn new(kind: ErrorKind, code: &'static str, message: impl Into<String>) -> ApiError {
        ApiError { kind, code, message: message.into(), rule: None, legal_moves: None }
    }

    pub fn bad_request(code: &'static str, message: impl Into<String>) -> ApiError {
        ApiError::new(ErrorKind::BadRequest, code, message)
    }

    pub fn unprocessable(code: &'static str, message: impl Into<String>) -> ApiError {
        ApiError::new(ErrorKind::Unprocessable, code, message)
    }

    pub fn with_rule(mut self, rule: impl Into<String>) -> ApiError {
        self.rule = Some(rule.into());
        self
    }
}

impl From<ParseError> for ApiError {
    fn from(e: ParseError) -> Self {
        ApiError::bad_request("parse_error", e.to_string())
    }
}

impl From<serde_json::Error> for ApiError {
    fn from(e: serde_json::Error) -> Self {
        ApiError::bad_request("malformed", e.to_string())
    }
}

impl From<CheckError> for ApiError {
    fn from(e: CheckError) -> Self {
        let rule = format!("{:?}", e.rule);
        ApiError::unprocessable("check_failed", e.to_string()).with_rule(rule)
    }
}

impl From<KernelError> for ApiError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::Check(c) => c.into(),
            KernelError::NotFragment => ApiError::unprocessable("not_fragment", e.to_string()),
            other => ApiError::unprocessable("kernel_error", other.to_string()),
        }
    }
}

impl From<SearchError> for ApiError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::NotFragment => ApiError::unprocessable("not_fragment", e.to_string()),
            other => ApiError::unprocessable("search_failed", other.to_string()),
        }
    }
}

impl From<NbeError> for ApiError {
    fn from(e: NbeError) -> Self {
        match e {
            NbeError::Kernel(k) => k.into(),
            NbeError::NotFragment => ApiError::unprocessable("not_fragment", e.to_string()),
            other => ApiError::unprocessable("normalize_failed", other.to_string()),
        }
    }
}

impl From<ModelError> for ApiError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::NotFragment => ApiError::unprocessable("not_fragment", e.to_string()),
            other => ApiError::unprocessable("model_error", other.to_string()),
        }
    }
}

impl From<HeytingError> for ApiError {
    fn from(e: HeytingError) -> Self {
        ApiError::unprocessable("algebra_error", e.to_string())
    }
}

impl From<DialogueError> for ApiError {
    fn from(e: DialogueError) -> Self {
        let msg = e.to_string();
        match e {
            DialogueError::Illegal { rule, .. } => ApiError::unprocessable("illegal_move", msg).with_rule(rule),
            DialogueError::UnknownMove(_) => ApiError::unprocessable("stale_move", msg),
            DialogueError::Finished => ApiError::new(ErrorKind::Conflict, "game_over", msg),
            DialogueError::BadTerm(_) => ApiError::unprocessable("bad_term", msg),
            DialogueError::Atomic => ApiError::unprocessable("atomic_formula", msg),
            DialogueError::NoStrategy | DialogueError::BudgetExhausted => ApiError::unprocessable("no_strategy", msg),
            DialogueError::Kernel(k) => k.into(),
            _ => ApiError::unprocessable("dialogue_error", msg),
        }
    }
}
