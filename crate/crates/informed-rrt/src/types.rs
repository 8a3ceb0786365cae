//! Shared vocabulary types: states, paths, costs, problem definitions.
//!
//! A state is a point of the box-shaped state space `X ⊂ R^n`; the cost of a
//! path is the sum of the Euclidean lengths of its segments. Everything here
//! is immutable after construction and safe to share across threads.

use alloc::format;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::world::World;
use crate::{Error, Result};

/// A point in the n-dimensional state space.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVec {
    coords: Vec<f64>,
}

impl StateVec {
    /// Builds a state, rejecting empty or non-finite coordinate lists.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput("state must have dimension >= 1".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("state coordinates must be finite".into()));
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn distance(&self, other: &StateVec) -> f64 {
        dist(&self.coords, &other.coords)
    }
}

impl core::ops::Index<usize> for StateVec {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl From<StateVec> for Vec<f64> {
    fn from(s: StateVec) -> Vec<f64> {
        s.coords
    }
}

/// Euclidean distance between two coordinate slices of equal length.
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    sq_dist(a, b).sqrt()
}

pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// An ordered sequence of states; all states share one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSeq {
    states: Vec<StateVec>,
}

impl PathSeq {
    pub fn new(states: Vec<StateVec>) -> Result<Self> {
        let Some(first) = states.first() else {
            return Err(Error::InvalidInput("path must contain at least one state".into()));
        };
        let dim = first.dim();
        for s in &states {
            check_dims(dim, s.dim())?;
        }
        Ok(Self { states })
    }

    pub fn states(&self) -> &[StateVec] {
        &self.states
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires >= 1 state
    }
}

/// A non-negative path cost with a distinguished infinite value.
///
/// Infinity stands for "no solution yet" (the minimum of an empty solution
/// set) and compares greater than every finite cost.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Cost(f64);

impl Cost {
    pub const ZERO: Cost = Cost(0.0);
    pub const INFINITY: Cost = Cost(f64::INFINITY);

    /// Accepts any non-negative value, including `f64::INFINITY`; rejects NaN
    /// and negative values.
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 {
            return Err(Error::InvalidInput(format!("cost must be non-negative, got {value}")));
        }
        Ok(Cost(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

impl Eq for Cost {}

#[allow(clippy::derive_ord_xor_partial_ord)]
impl Ord for Cost {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        // No NaN by construction, so total_cmp agrees with the usual order.
        self.0.total_cmp(&other.0)
    }
}

impl core::ops::Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0 + rhs.0)
    }
}

impl core::fmt::Display for Cost {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Total length of a path: the sum of Euclidean segment lengths.
///
/// A single-state path has zero cost; states must share one dimension.
pub fn path_cost(path: &PathSeq) -> Cost {
    let states = path.states();
    let total = states
        .windows(2)
        .map(|w| dist(w[0].coords(), w[1].coords()))
        .sum();
    Cost(total)
}

/// Admissible estimate of the cost of a path from `x_start` to `x_goal`
/// constrained to pass through `x`: straight-line in plus straight-line out.
///
/// Never less than the start-goal distance (triangle inequality).
pub fn heuristic_cost_through(x: &StateVec, x_start: &StateVec, x_goal: &StateVec) -> Result<Cost> {
    check_dims(x_start.dim(), x.dim())?;
    check_dims(x_start.dim(), x_goal.dim())?;
    Ok(Cost(heuristic_raw(x.coords(), x_start.coords(), x_goal.coords())))
}

/// Slice-level heuristic used in hot loops; dimensions must already agree.
pub(crate) fn heuristic_raw(x: &[f64], x_start: &[f64], x_goal: &[f64]) -> f64 {
    dist(x_start, x) + dist(x, x_goal)
}

/// A planning problem: a world, a start and goal state, and the goal-ball
/// radius. Validated once at construction; everything downstream trusts it.
#[derive(Clone, Debug)]
pub struct ProblemDef {
    world: World,
    x_start: StateVec,
    x_goal: StateVec,
    r_goal: f64,
    c_min: f64,
}

impl ProblemDef {
    /// Validates that start and goal are distinct, inside the bounds, and
    /// collision-free, and that the goal radius is non-negative.
    pub fn new(world: World, x_start: StateVec, x_goal: StateVec, r_goal: f64) -> Result<Self> {
        let n = world.dim();
        check_dims(n, x_start.dim())?;
        check_dims(n, x_goal.dim())?;
        if !(r_goal >= 0.0) {
            return Err(Error::InvalidInput(format!("goal radius must be >= 0, got {r_goal}")));
        }
        if !world.is_state_free(x_start.coords())? {
            return Err(Error::InvalidInput("start state is not collision-free".into()));
        }
        if !world.is_state_free(x_goal.coords())? {
            return Err(Error::InvalidInput("goal state is not collision-free".into()));
        }
        let c_min = x_start.distance(&x_goal);
        if c_min <= 0.0 {
            return Err(Error::DegenerateGeometry(
                "start and goal coincide; the focal distance must be positive".into(),
            ));
        }
        Ok(Self { world, x_start, x_goal, r_goal, c_min })
    }

    pub fn world(&self) -> &World {
        &self.world
    }

    pub fn x_start(&self) -> &StateVec {
        &self.x_start
    }

    pub fn x_goal(&self) -> &StateVec {
        &self.x_goal
    }

    pub fn r_goal(&self) -> f64 {
        self.r_goal
    }

    /// Straight-line start-goal distance; the theoretical minimum cost.
    pub fn c_min(&self) -> f64 {
        self.c_min
    }

    pub fn dim(&self) -> usize {
        self.x_start.dim()
    }

    pub fn bounds_lo(&self) -> &[f64] {
        self.world.bounds_lo()
    }

    pub fn bounds_hi(&self) -> &[f64] {
        self.world.bounds_hi()
    }
}
