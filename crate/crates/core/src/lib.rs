//! A first-order logic workbench.
//!
//! De Bruijn syntax, five checkable proof calculi with transformations
//! between them, normalization by evaluation, finite model and algebra
//! semantics, and Lorenzen dialogue games with strategy extraction.

pub mod syntax;
pub mod kernel;
pub mod dialogue;
pub mod nbe;
pub mod corpus;
pub mod models;
pub mod heyting;
