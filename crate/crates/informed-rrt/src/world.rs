//! Bounded box worlds with axis-aligned box obstacles, exact collision
//! queries, and the benchmark world generators.
//!
//! Obstacles are closed sets: a state on an obstacle face is in collision.
//! That removes measure-zero ambiguity from the exact segment test, which is
//! a per-axis parametric slab intersection with no discretization.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::types::{check_dims, Cost, ProblemDef, StateVec};
use crate::{Error, Result};

/// A closed axis-aligned box obstacle.
#[derive(Clone, Debug, PartialEq)]
pub struct AabbObstacle {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl AabbObstacle {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        check_dims(lo.len(), hi.len())?;
        if lo.is_empty() {
            return Err(Error::InvalidInput("obstacle must have dimension >= 1".into()));
        }
        for (l, h) in lo.iter().zip(&hi) {
            if !(l < h) {
                return Err(Error::InvalidInput(format!(
                    "obstacle must have lo < hi on every axis, got [{l}, {h}]"
                )));
            }
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    fn contains(&self, x: &[f64]) -> bool {
        x.iter().zip(&self.lo).zip(&self.hi).all(|((v, l), h)| *v >= *l && *v <= *h)
    }

    /// Euclidean distance from a point to the box; zero inside.
    pub(crate) fn distance_to(&self, x: &[f64]) -> f64 {
        x.iter()
            .zip(&self.lo)
            .zip(&self.hi)
            .map(|((v, l), h)| {
                let d = (l - v).max(v - h).max(0.0);
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Exact segment-box intersection by the slab method: intersect the
    /// per-axis parameter intervals of the closed box with [0, 1].
    fn intersects_segment(&self, a: &[f64], b: &[f64]) -> bool {
        let mut t_lo: f64 = 0.0;
        let mut t_hi: f64 = 1.0;
        for i in 0..a.len() {
            let d = b[i] - a[i];
            if d == 0.0 {
                if a[i] < self.lo[i] || a[i] > self.hi[i] {
                    return false;
                }
                continue;
            }
            let mut t1 = (self.lo[i] - a[i]) / d;
            let mut t2 = (self.hi[i] - a[i]) / d;
            if t1 > t2 {
                core::mem::swap(&mut t1, &mut t2);
            }
            t_lo = t_lo.max(t1);
            t_hi = t_hi.min(t2);
            if t_lo > t_hi {
                return false;
            }
        }
        true
    }
}

/// A bounded state space: a closed box minus a set of closed box obstacles.
#[derive(Clone, Debug, PartialEq)]
pub struct World {
    bounds_lo: Vec<f64>,
    bounds_hi: Vec<f64>,
    obstacles: Vec<AabbObstacle>,
}

impl World {
    pub fn new(bounds_lo: StateVec, bounds_hi: StateVec, obstacles: Vec<AabbObstacle>) -> Result<Self> {
        let lo: Vec<f64> = bounds_lo.into();
        let hi: Vec<f64> = bounds_hi.into();
        check_dims(lo.len(), hi.len())?;
        for (l, h) in lo.iter().zip(&hi) {
            if !(l < h) {
                return Err(Error::InvalidInput(format!(
                    "bounds must have lo < hi on every axis, got [{l}, {h}]"
                )));
            }
        }
        for ob in &obstacles {
            check_dims(lo.len(), ob.lo.len())?;
            let disjoint = ob
                .lo
                .iter()
                .zip(&ob.hi)
                .zip(lo.iter().zip(&hi))
                .any(|((ol, oh), (bl, bh))| *oh < *bl || *ol > *bh);
            if disjoint {
                return Err(Error::InvalidInput(
                    "obstacle does not intersect the state bounds".into(),
                ));
            }
        }
        Ok(Self { bounds_lo: lo, bounds_hi: hi, obstacles })
    }

    pub fn dim(&self) -> usize {
        self.bounds_lo.len()
    }

    pub fn bounds_lo(&self) -> &[f64] {
        &self.bounds_lo
    }

    pub fn bounds_hi(&self) -> &[f64] {
        &self.bounds_hi
    }

    pub fn obstacles(&self) -> &[AabbObstacle] {
        &self.obstacles
    }

    /// Lebesgue measure of the bounds box.
    pub fn bounds_measure(&self) -> f64 {
        self.bounds_lo.iter().zip(&self.bounds_hi).map(|(l, h)| h - l).product()
    }

    /// Euclidean diameter of the bounds box.
    pub fn bounds_diameter(&self) -> f64 {
        self.bounds_lo
            .iter()
            .zip(&self.bounds_hi)
            .map(|(l, h)| (h - l) * (h - l))
            .sum::<f64>()
            .sqrt()
    }

    /// True iff `x` lies within the bounds and strictly outside every
    /// (closed) obstacle.
    pub fn is_state_free(&self, x: &[f64]) -> Result<bool> {
        check_dims(self.dim(), x.len())?;
        Ok(self.state_free_unchecked(x))
    }

    pub(crate) fn state_free_unchecked(&self, x: &[f64]) -> bool {
        let in_bounds = x
            .iter()
            .zip(&self.bounds_lo)
            .zip(&self.bounds_hi)
            .all(|((v, l), h)| *v >= *l && *v <= *h);
        in_bounds && !self.obstacles.iter().any(|ob| ob.contains(x))
    }

    /// True iff the closed segment `[a, b]` stays in bounds and intersects
    /// no obstacle. Exact; a segment grazing an obstacle face or corner is
    /// in collision.
    pub fn is_segment_free(&self, a: &[f64], b: &[f64]) -> Result<bool> {
        check_dims(self.dim(), a.len())?;
        check_dims(self.dim(), b.len())?;
        Ok(self.segment_free_unchecked(a, b))
    }

    pub(crate) fn segment_free_unchecked(&self, a: &[f64], b: &[f64]) -> bool {
        // The bounds box is convex, so endpoint containment covers the
        // whole segment.
        let ends_in_bounds = [a, b].iter().all(|p| {
            p.iter()
                .zip(&self.bounds_lo)
                .zip(&self.bounds_hi)
                .all(|((v, l), h)| *v >= *l && *v <= *h)
        });
        ends_in_bounds && !self.obstacles.iter().any(|ob| ob.intersects_segment(a, b))
    }
}

/// Parameters for the single-wall toy world: start and goal a fixed distance
/// apart on the first axis of a hypercube map, separated by a centered wall.
#[derive(Clone, Debug, PartialEq)]
pub struct WallWorldParams {
    pub dim: usize,
    /// Side length `l` of the hypercube map.
    pub map_width: f64,
    /// Start-goal distance `d` along the first axis.
    pub start_goal_distance: f64,
    /// Wall thickness `w` along the start-goal axis.
    pub wall_thickness: f64,
    /// Wall extent `h` along every perpendicular axis.
    pub wall_extent: f64,
    /// Offset of the wall centre along the second axis; nonzero values make
    /// one flank shorter than the other (or seal it entirely).
    pub wall_offset: f64,
    pub r_goal: f64,
}

impl Default for WallWorldParams {
    fn default() -> Self {
        Self {
            dim: 2,
            map_width: 200.0,
            start_goal_distance: 100.0,
            wall_thickness: 10.0,
            wall_extent: 50.0,
            wall_offset: 0.0,
            r_goal: 1.0,
        }
    }
}

/// Builds the wall toy problem. The straight start-goal segment is always in
/// collision for valid parameters, so any solution must round the wall.
pub fn wall_world(params: &WallWorldParams) -> Result<ProblemDef> {
    let &WallWorldParams {
        dim: n,
        map_width: l,
        start_goal_distance: d,
        wall_thickness: w,
        wall_extent: h,
        wall_offset: off,
        r_goal,
    } = params;
    if n < 2 {
        return Err(Error::InvalidInput("wall world needs dimension >= 2".into()));
    }
    if !(l > 0.0 && d > 0.0 && w > 0.0 && h > 0.0) {
        return Err(Error::InvalidInput("wall-world parameters must be positive".into()));
    }
    if w >= d {
        return Err(Error::InvalidInput("wall thickness must be below the start-goal distance".into()));
    }
    if h >= l {
        return Err(Error::InvalidInput("wall extent must be below the map width".into()));
    }
    if l < d {
        return Err(Error::InvalidInput("map width must cover the start-goal distance".into()));
    }
    if off - h / 2.0 <= -l / 2.0 && off + h / 2.0 >= l / 2.0 {
        return Err(Error::InvalidInput("wall seals the map".into()));
    }

    let bounds_lo = StateVec::new(vec![-l / 2.0; n])?;
    let bounds_hi = StateVec::new(vec![l / 2.0; n])?;
    let mut start = vec![0.0; n];
    let mut goal = vec![0.0; n];
    start[0] = -d / 2.0;
    goal[0] = d / 2.0;

    let mut ob_lo = vec![-h / 2.0; n];
    let mut ob_hi = vec![h / 2.0; n];
    ob_lo[0] = -w / 2.0;
    ob_hi[0] = w / 2.0;
    ob_lo[1] = off - h / 2.0;
    ob_hi[1] = off + h / 2.0;
    let wall = AabbObstacle::new(ob_lo, ob_hi)?;

    let world = World::new(bounds_lo, bounds_hi, vec![wall])?;
    ProblemDef::new(world, StateVec::new(start)?, StateVec::new(goal)?, r_goal)
}

/// Obstacle-free hypercube problem with start and goal `d` apart on the
/// first axis, centered; used for convergence studies where the optimum is
/// the straight segment.
pub fn empty_world(n: usize, map_width: f64, start_goal_distance: f64, r_goal: f64) -> Result<ProblemDef> {
    let (l, d) = (map_width, start_goal_distance);
    if n == 0 || !(l > 0.0 && d > 0.0) || l < d {
        return Err(Error::InvalidInput(
            "empty world needs positive sizes and a map covering the endpoints".into(),
        ));
    }
    let world = World::new(StateVec::new(vec![-l / 2.0; n])?, StateVec::new(vec![l / 2.0; n])?, vec![])?;
    let mut start = vec![0.0; n];
    let mut goal = vec![0.0; n];
    start[0] = -d / 2.0;
    goal[0] = d / 2.0;
    ProblemDef::new(world, StateVec::new(start)?, StateVec::new(goal)?, r_goal)
}

/// Closed-form shortest-path cost for the 2-d wall world: the cheaper of the
/// two taut corner polylines around the wall, or the straight segment when
/// the wall misses it. Accepts `wall_thickness = 0` as the limiting plane.
pub fn analytic_optimum_wall(params: &WallWorldParams) -> Result<Cost> {
    if params.dim != 2 {
        return Err(Error::Unsupported(format!(
            "analytic wall optimum is 2-d only, got dimension {}",
            params.dim
        )));
    }
    let (l, d, w, h, off) = (
        params.map_width,
        params.start_goal_distance,
        params.wall_thickness,
        params.wall_extent,
        params.wall_offset,
    );
    let (y_bot, y_top) = (off - h / 2.0, off + h / 2.0);
    let blocked = h > 0.0 && y_bot <= 0.0 && y_top >= 0.0;
    if !blocked {
        return Cost::new(d);
    }
    let route = |y: f64| 2.0 * f64::hypot((d - w) / 2.0, y) + w;
    let mut best = f64::INFINITY;
    if y_top < l / 2.0 {
        best = best.min(route(y_top));
    }
    if y_bot > -l / 2.0 {
        best = best.min(route(y_bot));
    }
    if !best.is_finite() {
        return Err(Error::InvalidInput("wall seals the map; no route exists".into()));
    }
    Cost::new(best)
}

/// Parameters for the gap toy world: a wall split by a narrow opening, so a
/// cheap solution threads the gap while an easy one flanks the wall.
#[derive(Clone, Debug, PartialEq)]
pub struct GapWorldParams {
    /// Side length `l` of the square map.
    pub map_width: f64,
    /// Start-goal distance `d` along the first axis.
    pub start_goal_distance: f64,
    /// Wall thickness `w` along the start-goal axis.
    pub wall_thickness: f64,
    /// Wall extent `h`; the wall is centered on the start-goal line.
    pub wall_extent: f64,
    /// Gap height `h_g`.
    pub gap_height: f64,
    /// Gap centre position `y_g`, relative to the wall centre.
    pub gap_offset: f64,
    pub r_goal: f64,
}

impl Default for GapWorldParams {
    fn default() -> Self {
        Self {
            map_width: 200.0,
            start_goal_distance: 100.0,
            wall_thickness: 10.0,
            wall_extent: 100.0,
            gap_height: 5.0,
            gap_offset: 1.5,
            r_goal: 1.0,
        }
    }
}

impl GapWorldParams {
    fn gap_bounds(&self) -> (f64, f64) {
        (self.gap_offset - self.gap_height / 2.0, self.gap_offset + self.gap_height / 2.0)
    }
}

/// Builds the gap toy problem (2-d).
pub fn gap_world(params: &GapWorldParams) -> Result<ProblemDef> {
    let &GapWorldParams {
        map_width: l,
        start_goal_distance: d,
        wall_thickness: w,
        wall_extent: h,
        gap_height: h_g,
        r_goal,
        ..
    } = params;
    if !(l > 0.0 && d > 0.0 && w > 0.0 && h > 0.0 && h_g > 0.0) {
        return Err(Error::InvalidInput("gap-world parameters must be positive".into()));
    }
    if w >= d || h >= l || l < d {
        return Err(Error::InvalidInput("gap-world wall must fit inside the map".into()));
    }
    if h_g > h {
        return Err(Error::InvalidInput("gap height exceeds the wall extent".into()));
    }
    let (gap_lo, gap_hi) = params.gap_bounds();
    if gap_lo < -h / 2.0 || gap_hi > h / 2.0 {
        return Err(Error::InvalidInput("gap lies outside the wall".into()));
    }

    let mut obstacles = Vec::new();
    if gap_lo > -h / 2.0 {
        obstacles.push(AabbObstacle::new(
            vec![-w / 2.0, -h / 2.0],
            vec![w / 2.0, gap_lo],
        )?);
    }
    if gap_hi < h / 2.0 {
        obstacles.push(AabbObstacle::new(
            vec![-w / 2.0, gap_hi],
            vec![w / 2.0, h / 2.0],
        )?);
    }

    let world = World::new(
        StateVec::new(vec![-l / 2.0, -l / 2.0])?,
        StateVec::new(vec![l / 2.0, l / 2.0])?,
        obstacles,
    )?;
    ProblemDef::new(
        world,
        StateVec::new(vec![-d / 2.0, 0.0])?,
        StateVec::new(vec![d / 2.0, 0.0])?,
        r_goal,
    )
}

/// Cost of the cheapest route that ignores the gap and rounds the whole
/// wall: the taut polyline over the nearer wall end.
pub fn flanking_cost(params: &GapWorldParams) -> Cost {
    let (d, w, h) = (params.start_goal_distance, params.wall_thickness, params.wall_extent);
    Cost::new(2.0 * f64::hypot((d - w) / 2.0, h / 2.0) + w).expect("finite by construction")
}

/// Cost of the cheapest route through the gap: the taut polyline hugging the
/// gap edge nearest the start-goal line (the straight segment when the gap
/// straddles it).
pub fn through_gap_cost(params: &GapWorldParams) -> Cost {
    let (d, w) = (params.start_goal_distance, params.wall_thickness);
    let (gap_lo, gap_hi) = params.gap_bounds();
    let y = 0f64.clamp(gap_lo, gap_hi);
    Cost::new(2.0 * f64::hypot((d - w) / 2.0, y) + w).expect("finite by construction")
}

/// Specification of a randomly generated world. Generation is a pure
/// function of the spec: equal specs give identical worlds.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomWorldSpec {
    pub dim: usize,
    pub seed: u64,
    pub obstacle_count: usize,
    /// Inclusive range of obstacle edge lengths, drawn per axis.
    pub size_range: (f64, f64),
    pub bounds_lo: Vec<f64>,
    pub bounds_hi: Vec<f64>,
    pub start: Vec<f64>,
    pub goal: Vec<f64>,
    pub r_goal: f64,
}

const OBSTACLE_REDRAWS: usize = 200;
const WORLD_RETRIES: u64 = 16;
const FEASIBILITY_PREPASS_ITERS: u64 = 60_000;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Generates a random world with axis-aligned box obstacles and certifies
/// that it admits a path.
///
/// Obstacles are drawn with centres uniform in the bounds and edges uniform
/// in `size_range`; any obstacle closer than `r_goal` to the start or goal
/// is redrawn. Feasibility is certified with a coarse grid connectivity
/// check in 2 and 3 dimensions, and with a bounded planner pre-pass above
/// that (grids are intractable there); on failure the whole world is redrawn
/// from a derived seed, up to a retry budget.
pub fn random_world(spec: &RandomWorldSpec) -> Result<ProblemDef> {
    let n = spec.dim;
    if n == 0 || spec.bounds_lo.len() != n || spec.bounds_hi.len() != n
        || spec.start.len() != n || spec.goal.len() != n
    {
        return Err(Error::InvalidInput("random-world spec has inconsistent dimensions".into()));
    }
    if !(spec.size_range.0 > 0.0 && spec.size_range.1 >= spec.size_range.0) {
        return Err(Error::InvalidInput("obstacle size range must be positive and ordered".into()));
    }

    for retry in 0..WORLD_RETRIES {
        let stream_seed = if retry == 0 { spec.seed } else { splitmix64(spec.seed ^ retry) };
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);
        let problem = match generate_candidate(spec, &mut rng) {
            Ok(p) => p,
            Err(Error::GenerationFailed(_)) => continue,
            Err(e) => return Err(e),
        };
        if certify_feasible(&problem, splitmix64(stream_seed ^ 0x5eed))? {
            return Ok(problem);
        }
    }
    Err(Error::GenerationFailed(format!(
        "no feasible world within {WORLD_RETRIES} retries for seed {}",
        spec.seed
    )))
}

fn generate_candidate(spec: &RandomWorldSpec, rng: &mut ChaCha8Rng) -> Result<ProblemDef> {
    let n = spec.dim;
    let mut obstacles = Vec::with_capacity(spec.obstacle_count);
    for _ in 0..spec.obstacle_count {
        let mut placed = false;
        for _ in 0..OBSTACLE_REDRAWS {
            let mut lo = vec![0.0; n];
            let mut hi = vec![0.0; n];
            for i in 0..n {
                let centre = rng.random_range(spec.bounds_lo[i]..spec.bounds_hi[i]);
                let edge = rng.random_range(spec.size_range.0..=spec.size_range.1);
                lo[i] = centre - edge / 2.0;
                hi[i] = centre + edge / 2.0;
            }
            let ob = AabbObstacle::new(lo, hi)?;
            let clear = ob.distance_to(&spec.start) > spec.r_goal
                && ob.distance_to(&spec.goal) > spec.r_goal;
            if clear {
                obstacles.push(ob);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::GenerationFailed(
                "could not place an obstacle clear of the endpoints".into(),
            ));
        }
    }
    let world = World::new(
        StateVec::new(spec.bounds_lo.clone())?,
        StateVec::new(spec.bounds_hi.clone())?,
        obstacles,
    )?;
    ProblemDef::new(
        world,
        StateVec::new(spec.start.clone())?,
        StateVec::new(spec.goal.clone())?,
        spec.r_goal,
    )
}

fn certify_feasible(problem: &ProblemDef, seed: u64) -> Result<bool> {
    let n = problem.dim();
    if n <= 3 {
        let steps = if n == 2 { 100 } else { 32 };
        let span = problem.bounds_hi()[0] - problem.bounds_lo()[0];
        let cost = crate::oracle::grid_dijkstra_optimum(problem, span / steps as f64)?;
        Ok(cost.cost.is_finite())
    } else {
        let config = crate::planner::PlannerConfig {
            mode: crate::planner::PlannerMode::RrtStar,
            max_iterations: FEASIBILITY_PREPASS_ITERS,
            target_cost: Some(Cost::new(f64::MAX)?),
            seed,
            ..Default::default()
        };
        let result = crate::planner::plan(problem, &config)?;
        Ok(result.best_cost().is_finite())
    }
}

/// Serializes a problem (bounds, endpoints, obstacles) as a line-oriented
/// text document. `f64` values print in shortest round-trip form, so parsing
/// the output reproduces the problem exactly.
pub fn problem_to_text(problem: &ProblemDef) -> String {
    let mut out = String::new();
    let w = problem.world();
    let join = |xs: &[f64]| {
        let mut s = String::new();
        for (i, x) in xs.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{x}");
        }
        s
    };
    let _ = writeln!(out, "dim {}", problem.dim());
    let _ = writeln!(out, "bounds_lo {}", join(w.bounds_lo()));
    let _ = writeln!(out, "bounds_hi {}", join(w.bounds_hi()));
    let _ = writeln!(out, "start {}", join(problem.x_start().coords()));
    let _ = writeln!(out, "goal {}", join(problem.x_goal().coords()));
    let _ = writeln!(out, "r_goal {}", problem.r_goal());
    for ob in w.obstacles() {
        let _ = writeln!(out, "obstacle {} {}", join(ob.lo()), join(ob.hi()));
    }
    out
}

/// Parses the document produced by [`problem_to_text`].
pub fn problem_from_text(text: &str) -> Result<ProblemDef> {
    let mut dim = None;
    let mut fields: [Option<Vec<f64>>; 5] = [None, None, None, None, None];
    const NAMES: [&str; 5] = ["bounds_lo", "bounds_hi", "start", "goal", "r_goal"];
    let mut obstacles = Vec::new();

    let parse_values = |rest: &str| -> Result<Vec<f64>> {
        rest.split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::InvalidInput(format!("bad number {tok:?} in world text")))
            })
            .collect()
    };

    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match key {
            "dim" => {
                dim = Some(rest.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidInput(format!("bad dimension {rest:?} in world text"))
                })?);
            }
            "obstacle" => {
                let vals = parse_values(rest)?;
                if vals.len() % 2 != 0 {
                    return Err(Error::InvalidInput("obstacle line needs lo then hi coordinates".into()));
                }
                let (lo, hi) = vals.split_at(vals.len() / 2);
                obstacles.push(AabbObstacle::new(lo.to_vec(), hi.to_vec())?);
            }
            _ => {
                if let Some(slot) = NAMES.iter().position(|n| *n == key) {
                    fields[slot] = Some(parse_values(rest)?);
                } else {
                    return Err(Error::InvalidInput(format!("unknown key {key:?} in world text")));
                }
            }
        }
    }

    let n = dim.ok_or_else(|| Error::InvalidInput("world text is missing dim".into()))?;
    let take = |slot: usize, fields: &mut [Option<Vec<f64>>; 5]| -> Result<Vec<f64>> {
        fields[slot]
            .take()
            .ok_or_else(|| Error::InvalidInput(format!("world text is missing {}", NAMES[slot])))
    };
    let mut fields = fields;
    let bounds_lo = take(0, &mut fields)?;
    let bounds_hi = take(1, &mut fields)?;
    let start = take(2, &mut fields)?;
    let goal = take(3, &mut fields)?;
    let r_goal = take(4, &mut fields)?;
    if bounds_lo.len() != n || bounds_hi.len() != n || start.len() != n || goal.len() != n {
        return Err(Error::InvalidInput("world text fields disagree with dim".into()));
    }
    if r_goal.len() != 1 {
        return Err(Error::InvalidInput("r_goal must be a single value".into()));
    }
    let world = World::new(StateVec::new(bounds_lo)?, StateVec::new(bounds_hi)?, obstacles)?;
    ProblemDef::new(world, StateVec::new(start)?, StateVec::new(goal)?, r_goal[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn s(coords: &[f64]) -> StateVec {
        StateVec::new(coords.to_vec()).unwrap()
    }

    fn box2(lo: [f64; 2], hi: [f64; 2]) -> AabbObstacle {
        AabbObstacle::new(lo.to_vec(), hi.to_vec()).unwrap()
    }

    fn empty_world() -> World {
        World::new(s(&[-10.0, -10.0]), s(&[10.0, 10.0]), vec![]).unwrap()
    }

    #[test]
    fn state_free_basics() {
        let w = empty_world();
        assert!(w.is_state_free(&[0.0, 0.0]).unwrap());
        assert!(!w.is_state_free(&[11.0, 0.0]).unwrap());
        assert!(w.is_state_free(&[10.0, 10.0]).unwrap());

        let w = World::new(s(&[-10.0, -10.0]), s(&[10.0, 10.0]), vec![box2([-1.0, -1.0], [1.0, 1.0])])
            .unwrap();
        assert!(!w.is_state_free(&[0.0, 0.0]).unwrap());
        // Exactly on a face counts as collision.
        assert!(!w.is_state_free(&[1.0, 0.0]).unwrap());
        assert!(w.is_state_free(&[1.0 + 1e-12, 0.0]).unwrap());
    }

    #[test]
    fn segment_free_basics() {
        let w = World::new(s(&[-10.0, -10.0]), s(&[10.0, 10.0]), vec![box2([-1.0, -1.0], [1.0, 1.0])])
            .unwrap();
        assert!(!w.is_segment_free(&[-0.5, 0.0], &[0.5, 0.0]).unwrap());
        assert!(!w.is_segment_free(&[-5.0, 0.0], &[5.0, 0.0]).unwrap());
        assert!(w.is_segment_free(&[-5.0, 5.0], &[5.0, 5.0]).unwrap());
        // Leaving the bounds is a collision even without obstacles.
        assert!(!empty_world().is_segment_free(&[0.0, 0.0], &[0.0, 20.0]).unwrap());
    }

    #[test]
    fn segment_grazing_corner_collides() {
        let w = World::new(s(&[-10.0, -10.0]), s(&[10.0, 10.0]), vec![box2([0.0, 0.0], [1.0, 1.0])])
            .unwrap();
        // The diagonal line y = x + 1 touches the box exactly at (0, 1).
        assert!(!w.is_segment_free(&[-2.0, -1.0], &[2.0, 3.0]).unwrap());
        // Shift it up and it clears.
        assert!(w.is_segment_free(&[-2.0, -1.0 + 1e-9], &[2.0, 3.0 + 1e-9]).unwrap());
    }

    #[test]
    fn segment_test_is_symmetric() {
        let w = World::new(s(&[-10.0, -10.0]), s(&[10.0, 10.0]), vec![box2([0.0, 0.0], [1.0, 1.0])])
            .unwrap();
        let cases = [([-2.0, -1.0], [2.0, 3.0]), ([-5.0, 5.0], [5.0, 5.0]), ([0.5, 0.5], [0.6, 0.6])];
        for (a, b) in cases {
            assert_eq!(
                w.is_segment_free(&a, &b).unwrap(),
                w.is_segment_free(&b, &a).unwrap()
            );
        }
    }

    #[test]
    fn wall_world_blocks_the_straight_segment() {
        let problem = wall_world(&WallWorldParams::default()).unwrap();
        let (a, b) = (problem.x_start().coords(), problem.x_goal().coords());
        assert!(!problem.world().is_segment_free(a, b).unwrap());
        assert!(problem.world().is_state_free(a).unwrap());
    }

    #[test]
    fn wall_world_rejects_sealed_maps() {
        let params = WallWorldParams { wall_extent: 250.0, ..Default::default() };
        assert!(wall_world(&params).is_err());
    }

    #[test]
    fn analytic_wall_optimum_matches_hand_geometry() {
        // d=100, w=0, h=50: two legs of sqrt(50^2 + 25^2).
        let params = WallWorldParams {
            wall_thickness: 0.0,
            wall_extent: 50.0,
            ..Default::default()
        };
        let c = analytic_optimum_wall(&params).unwrap();
        assert_relative_eq!(c.value(), 2.0 * f64::hypot(50.0, 25.0), max_relative = 1e-12);
        assert_relative_eq!(c.value(), 111.803, max_relative = 1e-5);
    }

    #[test]
    fn analytic_wall_optimum_vanishing_wall() {
        let params = WallWorldParams {
            wall_thickness: 1e-9,
            wall_extent: 1e-9,
            ..Default::default()
        };
        let c = analytic_optimum_wall(&params).unwrap();
        assert_relative_eq!(c.value(), 100.0, max_relative = 1e-9);
    }

    #[test]
    fn analytic_wall_optimum_one_sided_when_offset_seals_a_flank() {
        // Wall spans y in [-45, 105]: it blocks the straight segment and its
        // top edge leaves the map (l/2 = 100), so only the bottom route at
        // |y| = 45 remains.
        let params = WallWorldParams { wall_extent: 150.0, wall_offset: 30.0, ..Default::default() };
        let c = analytic_optimum_wall(&params).unwrap();
        assert_relative_eq!(c.value(), 2.0 * f64::hypot(45.0, 45.0) + 10.0, max_relative = 1e-12);
        assert!(analytic_optimum_wall(&WallWorldParams { dim: 3, ..Default::default() }).is_err());
    }

    #[test]
    fn gap_world_geometry() {
        let params = GapWorldParams::default();
        let problem = gap_world(&params).unwrap();
        assert_eq!(problem.world().obstacles().len(), 2);
        // A segment through the gap centre is free; one through the wall is not.
        assert!(problem.world().is_segment_free(&[-1.0, 1.5], &[1.0, 1.5]).unwrap());
        assert!(!problem.world().is_segment_free(&[-10.0, 20.0], &[10.0, 20.0]).unwrap());
        assert!(through_gap_cost(&params) < flanking_cost(&params));
    }

    #[test]
    fn gap_covering_whole_wall_leaves_no_obstacle() {
        let params = GapWorldParams {
            gap_height: 100.0,
            gap_offset: 0.0,
            ..Default::default()
        };
        let problem = gap_world(&params).unwrap();
        assert!(problem.world().obstacles().is_empty());
        assert_relative_eq!(through_gap_cost(&params).value(), 100.0);
    }

    #[test]
    fn gap_outside_wall_rejected() {
        let params = GapWorldParams { gap_offset: 49.0, gap_height: 5.0, ..Default::default() };
        assert!(gap_world(&params).is_err());
    }

    #[test]
    fn through_gap_cost_straddling_gap_is_straight() {
        let params = GapWorldParams { gap_offset: 0.0, ..Default::default() };
        assert_relative_eq!(through_gap_cost(&params).value(), 100.0);
    }

    fn small_random_spec(seed: u64) -> RandomWorldSpec {
        RandomWorldSpec {
            dim: 2,
            seed,
            obstacle_count: 12,
            size_range: (5.0, 20.0),
            bounds_lo: vec![0.0, 0.0],
            bounds_hi: vec![100.0, 100.0],
            start: vec![10.0, 10.0],
            goal: vec![90.0, 90.0],
            r_goal: 1.0,
        }
    }

    #[test]
    fn random_world_is_deterministic_in_the_seed() {
        let a = random_world(&small_random_spec(42)).unwrap();
        let b = random_world(&small_random_spec(42)).unwrap();
        assert_eq!(a.world(), b.world());
        assert_eq!(problem_to_text(&a), problem_to_text(&b));
        let c = random_world(&small_random_spec(43)).unwrap();
        assert_ne!(a.world(), c.world());
    }

    #[test]
    fn random_world_keeps_endpoints_clear() {
        for seed in 0..20 {
            let p = random_world(&small_random_spec(seed)).unwrap();
            assert!(p.world().is_state_free(&[10.0, 10.0]).unwrap());
            assert!(p.world().is_state_free(&[90.0, 90.0]).unwrap());
            for ob in p.world().obstacles() {
                assert!(ob.distance_to(&[90.0, 90.0]) > 1.0);
            }
        }
    }

    #[test]
    fn random_world_with_no_obstacles_is_the_straight_problem() {
        let spec = RandomWorldSpec { obstacle_count: 0, ..small_random_spec(7) };
        let p = random_world(&spec).unwrap();
        assert!(p.world().obstacles().is_empty());
        assert!(p
            .world()
            .is_segment_free(p.x_start().coords(), p.x_goal().coords())
            .unwrap());
    }

    #[test]
    fn problem_text_round_trips_exactly() {
        let p = random_world(&small_random_spec(1)).unwrap();
        let text = problem_to_text(&p);
        let q = problem_from_text(&text).unwrap();
        assert_eq!(p.world(), q.world());
        assert_eq!(p.x_start(), q.x_start());
        assert_eq!(p.x_goal(), q.x_goal());
        assert_eq!(p.r_goal(), q.r_goal());
        assert_eq!(problem_to_text(&q), text);
    }

    #[test]
    fn problem_text_rejects_garbage() {
        assert!(problem_from_text("dim 2\nbounds_lo 0 0\n").is_err());
        assert!(problem_from_text("nonsense 1 2 3\n").is_err());
    }
}
