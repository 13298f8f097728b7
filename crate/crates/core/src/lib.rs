//! Perceptual question answering on symbol grids.
//!
//! Seven tasks, one per perceptual-grouping law, each pairing a question
//! grid with a unique answer grid. The crate provides the grid model
//! ([`grid`]), a rule-based solver per task ([`oracle`]), seeded
//! answer-first generators ([`taskgen`]), the on-disk format
//! ([`dataset`]), statistics ([`stats`]), numeric exports for learners
//! ([`encode`]) and exact-match evaluation ([`eval`], [`harness`]).

pub mod dataset;
pub mod encode;
pub mod eval;
pub mod grid;
pub mod harness;
pub mod oracle;
pub mod rng;
pub mod stats;
pub mod task;
pub mod taskgen;
