//! Exact Sprague-Grundy analysis for a family of entropy-driven impartial
//! games played on bit strings, heaps, and graphs, plus a genetic-programming
//! engine that searches for closed-form Grundy value formulas over a small
//! integer primitive set.
//!
//! The crate is organized in five layers:
//!
//! - [`games`] — position types and legal-move generation for the rulesets
//!   `GA1`, `GA2`, `CM`, `KAYLES`, and `ARC KAYLES`, together with the
//!   structural transforms between representations (run-length reduction,
//!   the CM-to-graph construction, canonical keys).
//! - [`solver`] — memoized mex/nim-sum evaluation, an independent KAYLES
//!   reference table, the GA2 closed form, value sequences, and periodicity
//!   detection.
//! - [`formula`] — integer expression trees, a textual formula language with
//!   a parser and printer, and random tree generation.
//! - [`evolve`] — Grundy-value datasets and the generational GP loop.
//! - [`verify`] — an executable suite that checks every structural claim the
//!   solvers rely on against an independent second route.
//!
//! The `examples/` directory contains one runnable program per capability.
//! The `evonim` binary exposes the same functionality as subcommands
//! (`grundy`, `options`, `sequence`, `dataset`, `evolve`, `eval`, `verify`).

pub mod cli;
pub mod evolve;
pub mod formula;
pub mod games;
pub mod solver;
pub mod verify;

pub use games::{BitPosition, CmPosition, GraphPosition, HeapPosition, Position, Ruleset};
pub use solver::{Nimber, Solver};
