//! Sampling-based motion planning in `R^n` with RRT* and Informed RRT*.
//!
//! Informed RRT* behaves exactly like RRT* until a first solution is found,
//! then restricts sampling to the set of states that could still improve the
//! solution. For path-length costs that set is a prolate hyperspheroid with
//! the start and goal as focal points, and this crate samples it *directly*
//! (no rejection from an enclosing region): a uniform draw from the unit
//! n-ball is stretched by the hyperspheroid radii, rotated into the world
//! frame, and translated to the hyperspheroid centre.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default
//! `std` feature for embedded use. Wall-clock time budgets are only honored
//! with `std`.
//!
//! Modules:
//! - [`types`]: states, paths, costs, and problem definitions.
//! - [`sampling`]: the informed-set sampler plus its closed-form measures,
//!   improvement-probability bounds, and convergence quantities.
//! - [`world`]: axis-aligned box worlds, collision queries, and the toy and
//!   random benchmark worlds.
//! - [`nn`]: the nearest-neighbor index used by the planner.
//! - [`planner`]: the RRT* / Informed RRT* planner itself.
//! - [`oracle`]: independent brute-force validators (Monte-Carlo volume,
//!   chi-square uniformity, grid Dijkstra) used by tests and benchmarks.

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;

pub mod nn;
pub mod oracle;
pub mod planner;
pub mod sampling;
pub mod types;
pub mod world;

pub use planner::{plan, PlanResult, PlannerConfig, PlannerMode};
pub use types::{Cost, PathSeq, ProblemDef, StateVec};
pub use world::World;

use alloc::string::String;

/// Errors shared across the crate.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("transverse diameter {c_best} is below the focal distance {c_min}")]
    InfeasibleCost { c_best: f64, c_min: f64 },
    #[error("sampling stalled: {attempts} consecutive draws fell outside the state bounds")]
    SamplingStalled { attempts: u64 },
    #[error("nearest-neighbor index is empty")]
    EmptyIndex,
    #[error("vertex id {0} already present in the index")]
    DuplicateVertex(u32),
    #[error("world generation failed: {0}")]
    GenerationFailed(String),
    #[error("no solution recorded")]
    NoSolution,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
