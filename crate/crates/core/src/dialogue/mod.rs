//! Lorenzen dialogues over the first-order local rules.

pub mod rules;
mod dgame;
mod egame;
mod interp;
mod ljd;
mod moves;
mod search;
mod session;
mod sgame;

pub use dgame::{d_omoves, d_open, d_pmoves, d_ostep, d_pstep, DState};
pub use egame::{e_omoves, e_open, e_ostep, e_pmove_legal, e_pmoves, EState};
pub use interp::{d_image, DInterp, EInterp, SInterp, DEFAULT_FUEL};
pub use ljd::{eta, l_premise_for, lj_from_ljd, ljd_from_lj, ljd_l, ljd_r, l_admission, l_counter_premises, r_premise_for, retarget, widen};
pub use moves::{default_menu, fresh_term, menu_with, DialogueError, OMove, PMove, Variant};
pub use search::{
    d_win_search, e_win_search, ljd_from_dwin, ljd_from_estrategy, strategy_from_ljd, unfold_e, verify_d, verify_e,
    ExplicitStrategy, GameBudget, Plan, Strategy,
};
pub use session::{apply_opponent, apply_proponent, replay, EngineState, GameSession, LegalMove, Move, Mover, SessionState, Source, Status, Turn};
pub use sgame::{s_omoves, s_open, s_ostep, s_pmoves, s_pstep, SState};
