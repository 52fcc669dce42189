use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rand::RngCore;

use folwb_core::dialogue::GameSession;

use crate::error::{ApiError, ErrorKind};

struct Entry {
    session: Arc<Mutex<GameSession>>,
    touched: Instant,
}

/// Live sessions keyed by a random 128-bit id. With a directory configured,
/// every change is written through as the session's JSON and unknown ids are
/// looked up on disk and replayed before use.
pub struct SessionStore {
    live: Mutex<HashMap<String, Entry>>,
    ttl: Duration,
    dir: Option<PathBuf>,
}

fn not_found(id: &str) -> ApiError {
    ApiError::new(ErrorKind::NotFound, "unknown_session", format!("no game with id {id}"))
}

fn io_error(e: std::io::Error) -> ApiError {
    ApiError::new(ErrorKind::Unprocessable, "storage", e.to_string())
}

impl SessionStore {
    pub fn new(ttl: Duration, dir: Option<PathBuf>) -> SessionStore {
        SessionStore { live: Mutex::new(HashMap::new()), ttl, dir }
    }

    pub fn fresh_id() -> String {
        let mut bytes = [0u8; 16];
        rand::thread_rng().fill_bytes(&mut bytes);
        bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, id: &str) -> Option<PathBuf> {
        // ids are hex; anything else never reaches the file system
        let ok = id.len() == 32 && id.bytes().all(|b| b.is_ascii_hexdigit());
        self.dir.as_ref().filter(|_| ok).map(|d| d.join(format!("{id}.json")))
    }

    fn persist(&self, g: &GameSession) -> Result<(), ApiError> {
        if let Some(p) = self.path(&g.id) {
            let text = serde_json::to_string(g).expect("sessions serialize");
            std::fs::write(p, text).map_err(io_error)?;
        }
        Ok(())
    }

    fn sweep(&self, live: &mut HashMap<String, Entry>) {
        let ttl = self.ttl;
        live.retain(|_, e| e.touched.elapsed() < ttl);
    }

    pub fn insert(&self, g: GameSession) -> Result<(), ApiError> {
        self.persist(&g)?;
        let mut live = self.live.lock().expect("store lock");
        self.sweep(&mut live);
        live.insert(g.id.clone(), Entry { session: Arc::new(Mutex::new(g)), touched: Instant::now() });
        Ok(())
    }

    fn load(&self, id: &str) -> Result<Option<GameSession>, ApiError> {
        let Some(p) = self.path(id) else { return Ok(None) };
        let text = match std::fs::read_to_string(&p) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_error(e)),
        };
        let stored: GameSession = serde_json::from_str(&text)
            .map_err(|e| ApiError::unprocessable("storage", format!("corrupt session file: {e}")))?;
        Ok(Some(stored.rebuild()?))
    }

    fn handle(&self, id: &str) -> Result<Arc<Mutex<GameSession>>, ApiError> {
        {
            let mut live = self.live.lock().expect("store lock");
            self.sweep(&mut live);
            if let Some(e) = live.get_mut(id) {
                e.touched = Instant::now();
                return Ok(e.session.clone());
            }
        }
        let g = self.load(id)?.ok_or_else(|| not_found(id))?;
        let mut live = self.live.lock().expect("store lock");
        let e = live
            .entry(id.to_string())
            .or_insert_with(|| Entry { session: Arc::new(Mutex::new(g)), touched: Instant::now() });
        Ok(e.session.clone())
    }

    /// Runs `f` with the session locked; a successful change is persisted
    /// before the lock is released.
    pub fn with<T>(&self, id: &str, f: impl FnOnce(&mut GameSession) -> Result<T, ApiError>) -> Result<T, ApiError> {
        let h = self.handle(id)?;
        let mut g = h.lock().expect("session lock");
        let out = f(&mut g)?;
        self.persist(&g)?;
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.live.lock().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use folwb_core::dialogue::Variant;
    use folwb_core::syntax::parse_formula;

    fn game(id: &str) -> GameSession {
        GameSession::new(id, Variant::E, parse_formula("p -> p").unwrap(), None, None).unwrap()
    }

    #[test]
    fn ids_are_distinct_hex() {
        let a = SessionStore::fresh_id();
        assert_eq!(a.len(), 32);
        assert_ne!(a, SessionStore::fresh_id());
    }

    #[test]
    fn expired_sessions_vanish() {
        let store = SessionStore::new(Duration::from_millis(0), None);
        let id = SessionStore::fresh_id();
        store.insert(game(&id)).unwrap();
        let err = store.with(&id, |_| Ok(())).unwrap_err();
        assert_eq!(err.kind, ErrorKind::NotFound);
        assert!(store.is_empty());
    }
}
