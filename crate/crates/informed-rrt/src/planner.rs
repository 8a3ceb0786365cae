//! RRT* and Informed RRT*.
//!
//! Both modes share one loop: sample, extend toward the sample by at most
//! the steer length, connect the new vertex to the cheapest collision-free
//! parent in its neighborhood, then rewire neighbors through it whenever
//! that lowers their cost-to-come. Vertices inside the goal ball are
//! recorded as solutions and the best solution cost is the minimum over
//! them (infinity while none exist).
//!
//! The single difference between the modes is the sampling domain. RRT*
//! always samples the bounds box uniformly. Informed RRT* does the same
//! until a first solution exists, then draws uniformly from the informed
//! subset for the current best cost, so the two modes are identical, sample
//! for sample, up to the first solution. In informed mode the rewiring
//! radius is likewise computed from the measure of the informed subset and
//! the number of vertices inside it rather than from the whole problem.
//!
//! One run is strictly single-threaded and deterministic in its seed: the
//! random stream is consumed by sampling alone, so equal seeds replay equal
//! vertex sequences bit for bit.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::nn::{KdTree, VertexId};
use crate::sampling::{phs_measure, unit_ball_measure, InformedSampler};
use crate::types::{dist, heuristic_raw, Cost, PathSeq, ProblemDef, StateVec};
use crate::{Error, Result};

/// Which sampling policy the planner runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlannerMode {
    RrtStar,
    InformedRrtStar,
}

impl PlannerMode {
    pub fn label(self) -> &'static str {
        match self {
            PlannerMode::RrtStar => "rrt_star",
            PlannerMode::InformedRrtStar => "informed",
        }
    }
}

/// Steer-length policy: track the rewiring radius (the default) or hold a
/// fixed value for ablations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EtaPolicy {
    EqualToRewireRadius,
    Fixed(f64),
}

/// When to append cost events beyond every improvement of the best cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckpointSchedule {
    ImprovementsOnly,
    EveryIterations(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlannerConfig {
    pub mode: PlannerMode,
    /// Multiplier on the lower-bound rewiring radius; must be >= 1 for the
    /// asymptotic-optimality guarantee to carry over.
    pub gamma_factor: f64,
    pub eta_policy: EtaPolicy,
    pub max_iterations: u64,
    /// Stop this many iterations after the first solution, if set.
    pub post_solution_iterations: Option<u64>,
    /// Wall-clock budget in seconds; ignored without the `std` feature.
    pub time_budget: Option<f64>,
    pub seed: u64,
    /// Stop as soon as the best cost is at or below this value.
    pub target_cost: Option<Cost>,
    pub checkpoints: CheckpointSchedule,
    /// Ablation switch: keep sampling uniform (c_max = infinity) forever.
    /// With it set, informed mode reproduces RRT* exactly, seed for seed.
    pub force_uniform_sampling: bool,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        Self {
            mode: PlannerMode::InformedRrtStar,
            gamma_factor: 1.1,
            eta_policy: EtaPolicy::EqualToRewireRadius,
            max_iterations: 100_000,
            post_solution_iterations: None,
            time_budget: None,
            seed: 0,
            target_cost: None,
            checkpoints: CheckpointSchedule::ImprovementsOnly,
            force_uniform_sampling: false,
        }
    }
}

/// Why a run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TerminationReason {
    MaxIterations,
    TargetCostReached,
    PostSolutionBudgetExhausted,
    TimeBudgetExhausted,
    /// The start state already lies inside the goal ball.
    StartInGoalRegion,
}

impl TerminationReason {
    pub fn label(self) -> &'static str {
        match self {
            TerminationReason::MaxIterations => "max_iterations",
            TerminationReason::TargetCostReached => "target_cost",
            TerminationReason::PostSolutionBudgetExhausted => "post_solution_budget",
            TerminationReason::TimeBudgetExhausted => "time_budget",
            TerminationReason::StartInGoalRegion => "start_in_goal",
        }
    }
}

/// One point of the best-cost timeline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostEvent {
    pub iteration: u64,
    pub elapsed_secs: f64,
    pub cost: Cost,
}

/// The planner graph: vertices with parent links and cost-to-come. The root
/// is its own parent and has cost zero; every stored edge was collision-free
/// when inserted and stays so through rewires (rewiring only re-parents).
#[derive(Clone, Debug)]
pub struct Tree {
    dim: usize,
    coords: Vec<f64>,
    parent: Vec<u32>,
    cost: Vec<f64>,
    first_child: Vec<u32>,
    next_sibling: Vec<u32>,
}

const NIL: u32 = u32::MAX;

impl Tree {
    fn with_root(root: &[f64]) -> Self {
        Self {
            dim: root.len(),
            coords: root.to_vec(),
            parent: vec![0],
            cost: vec![0.0],
            first_child: vec![NIL],
            next_sibling: vec![NIL],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always holds the root
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn state(&self, id: VertexId) -> &[f64] {
        let s = id.index() * self.dim;
        &self.coords[s..s + self.dim]
    }

    pub fn parent(&self, id: VertexId) -> VertexId {
        VertexId(self.parent[id.index()])
    }

    pub fn cost_to_come(&self, id: VertexId) -> Cost {
        Cost::new(self.cost[id.index()]).expect("tree costs are non-negative")
    }

    fn add_vertex(&mut self, x: &[f64], parent: u32, cost: f64) -> u32 {
        let id = self.parent.len() as u32;
        self.coords.extend_from_slice(x);
        self.parent.push(parent);
        self.cost.push(cost);
        self.first_child.push(NIL);
        self.next_sibling.push(self.first_child[parent as usize]);
        self.first_child[parent as usize] = id;
        id
    }

    fn detach(&mut self, child: u32) {
        let parent = self.parent[child as usize] as usize;
        let mut cur = self.first_child[parent];
        if cur == child {
            self.first_child[parent] = self.next_sibling[child as usize];
        } else {
            while self.next_sibling[cur as usize] != child {
                cur = self.next_sibling[cur as usize];
            }
            self.next_sibling[cur as usize] = self.next_sibling[child as usize];
        }
        self.next_sibling[child as usize] = NIL;
    }

    /// Re-parents `child` with a strictly lower cost and shifts the whole
    /// subtree below it by the same delta (edge lengths are unchanged).
    /// Returns the lowest updated cost among flagged vertices, so the caller
    /// can track the best solution without rescanning.
    fn rewire(
        &mut self,
        child: u32,
        new_parent: u32,
        new_cost: f64,
        stack: &mut Vec<u32>,
        flagged: &[bool],
    ) -> f64 {
        let delta = new_cost - self.cost[child as usize];
        debug_assert!(delta < 0.0);
        self.detach(child);
        self.parent[child as usize] = new_parent;
        self.next_sibling[child as usize] = self.first_child[new_parent as usize];
        self.first_child[new_parent as usize] = child;

        let mut min_flagged = f64::INFINITY;
        stack.clear();
        stack.push(child);
        while let Some(v) = stack.pop() {
            self.cost[v as usize] += delta;
            if flagged[v as usize] {
                min_flagged = min_flagged.min(self.cost[v as usize]);
            }
            let mut c = self.first_child[v as usize];
            while c != NIL {
                stack.push(c);
                c = self.next_sibling[c as usize];
            }
        }
        min_flagged
    }

    /// Path from the root to `id` along parent links.
    pub fn path_to(&self, id: VertexId) -> PathSeq {
        let mut ids = vec![id.0];
        let mut cur = id.0;
        while self.parent[cur as usize] != cur {
            cur = self.parent[cur as usize];
            ids.push(cur);
        }
        ids.reverse();
        let states = ids
            .into_iter()
            .map(|v| StateVec::new(self.state(VertexId(v)).to_vec()).expect("tree states are finite"))
            .collect();
        PathSeq::new(states).expect("path has at least the root")
    }
}

/// Everything a run produces: the final tree, the recorded solutions, the
/// best-cost timeline, and why it stopped.
#[derive(Clone, Debug)]
pub struct PlanResult {
    tree: Tree,
    solution_ids: Vec<VertexId>,
    best_id: Option<VertexId>,
    best_cost: Cost,
    events: Vec<CostEvent>,
    termination: TerminationReason,
    iterations: u64,
    first_solution_iteration: Option<u64>,
    vertices_at_first_solution: Option<usize>,
    elapsed_secs: f64,
}

impl PlanResult {
    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    /// Vertex ids inside the goal region, in discovery order.
    pub fn solution_ids(&self) -> &[VertexId] {
        &self.solution_ids
    }

    pub fn best_cost(&self) -> Cost {
        self.best_cost
    }

    pub fn best_solution(&self) -> Option<VertexId> {
        self.best_id
    }

    pub fn events(&self) -> &[CostEvent] {
        &self.events
    }

    pub fn termination(&self) -> TerminationReason {
        self.termination
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn first_solution_iteration(&self) -> Option<u64> {
        self.first_solution_iteration
    }

    /// Tree size at the moment the first solution registered; the prefix of
    /// the vertex sequence both modes share under one seed.
    pub fn vertices_at_first_solution(&self) -> Option<usize> {
        self.vertices_at_first_solution
    }

    pub fn elapsed_secs(&self) -> f64 {
        self.elapsed_secs
    }
}

/// Walks parent links from the best solution vertex back to the root.
pub fn extract_path(result: &PlanResult) -> Result<PathSeq> {
    let best = result.best_id.ok_or(Error::NoSolution)?;
    Ok(result.tree.path_to(best))
}

/// Moves from `x_from` toward `x_to`, at most `eta` far: `x_to` itself when
/// already within reach, otherwise the point at distance `eta` along the
/// segment.
pub fn steer(x_from: &StateVec, x_to: &StateVec, eta: f64) -> StateVec {
    let mut out = vec![0.0; x_from.dim()];
    steer_into(x_from.coords(), x_to.coords(), eta, &mut out);
    StateVec::new(out).expect("steer outputs are finite")
}

fn steer_into(from: &[f64], to: &[f64], eta: f64, out: &mut [f64]) {
    let d = dist(from, to);
    if d <= eta || d == 0.0 {
        out.copy_from_slice(to);
        return;
    }
    let t = eta / d;
    for ((o, f), g) in out.iter_mut().zip(from).zip(to) {
        *o = f + t * (g - f);
    }
}

/// Lower-bound rewiring radius scaled by `gamma_factor`:
///
/// ```text
/// r = gamma_factor * 2 (1 + 1/n)^(1/n) (measure / zeta_n)^(1/n) (ln m / m)^(1/n)
/// ```
///
/// `m` is the vertex count of the sampling domain and `measure` its
/// Lebesgue measure. Below two vertices the formula is meaningless and
/// `small_count_radius` (the bounds-box diameter, for planner use) is
/// returned instead.
pub fn rewiring_radius(
    num_vertices: usize,
    domain_measure: f64,
    dim: usize,
    gamma_factor: f64,
    small_count_radius: f64,
) -> Result<f64> {
    if !(domain_measure > 0.0) {
        return Err(Error::InvalidInput(alloc::format!(
            "domain measure must be positive, got {domain_measure}"
        )));
    }
    if num_vertices < 2 {
        return Ok(small_count_radius);
    }
    let n = dim as f64;
    let m = num_vertices as f64;
    let gamma_star = 2.0 * (1.0 + 1.0 / n).powf(1.0 / n) * (domain_measure / unit_ball_measure(dim)).powf(1.0 / n);
    Ok(gamma_factor * gamma_star * (m.ln() / m).powf(1.0 / n))
}

#[cfg(feature = "std")]
#[derive(Debug)]
struct Stopwatch(std::time::Instant);

#[cfg(feature = "std")]
impl Stopwatch {
    fn start() -> Self {
        Stopwatch(std::time::Instant::now())
    }
    fn elapsed_secs(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

#[cfg(not(feature = "std"))]
#[derive(Debug)]
struct Stopwatch;

#[cfg(not(feature = "std"))]
impl Stopwatch {
    fn start() -> Self {
        Stopwatch
    }
    fn elapsed_secs(&self) -> f64 {
        0.0
    }
}

/// Runs the planner on a problem.
pub fn plan(problem: &ProblemDef, config: &PlannerConfig) -> Result<PlanResult> {
    if !(config.gamma_factor >= 1.0) {
        return Err(Error::InvalidInput(alloc::format!(
            "gamma_factor must be >= 1, got {}",
            config.gamma_factor
        )));
    }
    if let EtaPolicy::Fixed(eta) = config.eta_policy {
        if !(eta > 0.0) {
            return Err(Error::InvalidInput("fixed steer length must be positive".into()));
        }
    }

    let clock = Stopwatch::start();
    let n = problem.dim();
    let world = problem.world();
    let start = problem.x_start().coords();
    let goal = problem.x_goal().coords();
    let c_min = problem.c_min();

    let mut tree = Tree::with_root(start);
    let mut events: Vec<CostEvent> = Vec::new();

    // Degenerate case: the root already solves the problem.
    if dist(start, goal) <= problem.r_goal() {
        events.push(CostEvent { iteration: 0, elapsed_secs: clock.elapsed_secs(), cost: Cost::ZERO });
        return Ok(PlanResult {
            tree,
            solution_ids: vec![VertexId(0)],
            best_id: Some(VertexId(0)),
            best_cost: Cost::ZERO,
            events,
            termination: TerminationReason::StartInGoalRegion,
            iterations: 0,
            first_solution_iteration: Some(0),
            vertices_at_first_solution: Some(1),
            elapsed_secs: clock.elapsed_secs(),
        });
    }

    let sampler = InformedSampler::new(problem)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut index = KdTree::new(n);
    index.insert(start, VertexId(0))?;
    let mut fhat = vec![c_min]; // f-hat of the root is exactly c_min

    let bounds_measure = world.bounds_measure();
    let bounds_diameter = world.bounds_diameter();

    let mut solutions: Vec<u32> = Vec::new();
    let mut c_best = f64::INFINITY;
    let mut informed_count: usize = 0;
    let mut first_solution_iteration: Option<u64> = None;
    let mut vertices_at_first_solution: Option<usize> = None;
    let mut termination = TerminationReason::MaxIterations;
    let mut iterations = 0u64;

    let mut x_rand = vec![0.0; n];
    let mut x_new = vec![0.0; n];
    let mut ball = vec![0.0; n];
    let mut near: Vec<VertexId> = Vec::new();
    let mut rewire_stack: Vec<u32> = Vec::new();
    let mut is_solution = vec![false];

    'outer: for iteration in 1..=config.max_iterations {
        iterations = iteration;

        // Informed mode samples the subset that can improve the current
        // best; RRT* (and the ablation switch) keep sampling the whole box.
        let informed = config.mode == PlannerMode::InformedRrtStar
            && !config.force_uniform_sampling
            && c_best.is_finite();
        let c_max = if informed {
            // Roundoff on near-straight paths may dip a hair below c_min.
            Cost::new(c_best.max(c_min))?
        } else {
            Cost::INFINITY
        };

        // The informed radius shrinks with the informed subset. Once the
        // best cost reaches (or undershoots, via goal-ball vertices) the
        // focal distance the subset has measure zero; fall back to the
        // whole-problem radius rather than freezing rewiring.
        let informed_measure = if informed {
            phs_measure(c_max.value(), c_min, n)?.min(bounds_measure)
        } else {
            0.0
        };
        let (m, measure) = if informed && informed_measure > 0.0 && informed_count >= 2 {
            (informed_count, informed_measure)
        } else {
            (tree.len(), bounds_measure)
        };
        let radius = rewiring_radius(m, measure, n, config.gamma_factor, bounds_diameter)?;
        let eta = match config.eta_policy {
            EtaPolicy::EqualToRewireRadius => radius,
            EtaPolicy::Fixed(v) => v,
        };

        sampler.sample_into(c_max, &mut rng, &mut ball, &mut x_rand)?;
        let nearest = index.nearest(&x_rand)?;
        steer_into(tree.state(nearest), &x_rand, eta, &mut x_new);

        // Costs only ever decrease, so tracking every decrease as it happens
        // keeps an exact running best without rescanning the solution set.
        let mut new_best = c_best;

        if world.segment_free_unchecked(tree.state(nearest), &x_new) {
            // Cheapest collision-free parent in the neighborhood; the first
            // minimum in ascending-id order wins ties.
            index.near_into(&x_new, radius, &mut near);
            let mut parent = nearest.0;
            let mut cost_new = tree.cost_to_come(nearest).value() + dist(tree.state(nearest), &x_new);
            for &cand in &near {
                let c = tree.cost_to_come(cand).value() + dist(tree.state(cand), &x_new);
                if c < cost_new && world.segment_free_unchecked(tree.state(cand), &x_new) {
                    parent = cand.0;
                    cost_new = c;
                }
            }

            let new_id = tree.add_vertex(&x_new, parent, cost_new);
            index.insert(&x_new, VertexId(new_id))?;
            let f = heuristic_raw(&x_new, start, goal);
            fhat.push(f);
            is_solution.push(false);
            if c_best.is_finite() && f <= c_best {
                informed_count += 1;
            }

            // Rewire the neighborhood through the new vertex.
            for &cand in &near {
                let through = cost_new + dist(&x_new, tree.state(cand));
                if through < tree.cost_to_come(cand).value()
                    && world.segment_free_unchecked(&x_new, tree.state(cand))
                {
                    let touched =
                        tree.rewire(cand.0, new_id, through, &mut rewire_stack, &is_solution);
                    new_best = new_best.min(touched);
                }
            }

            if dist(&x_new, goal) <= problem.r_goal() {
                solutions.push(new_id);
                is_solution[new_id as usize] = true;
                new_best = new_best.min(cost_new);
                if first_solution_iteration.is_none() {
                    first_solution_iteration = Some(iteration);
                    vertices_at_first_solution = Some(tree.len());
                }
            }
        }

        if new_best < c_best {
            c_best = new_best;
            events.push(CostEvent {
                iteration,
                elapsed_secs: clock.elapsed_secs(),
                cost: Cost::new(c_best)?,
            });
            informed_count = fhat.iter().filter(|&&f| f <= c_best).count();
        } else if let CheckpointSchedule::EveryIterations(k) = config.checkpoints {
            if k > 0 && iteration % k == 0 {
                events.push(CostEvent {
                    iteration,
                    elapsed_secs: clock.elapsed_secs(),
                    cost: Cost::new(c_best)?,
                });
            }
        }

        if let Some(target) = config.target_cost {
            if c_best <= target.value() {
                termination = TerminationReason::TargetCostReached;
                break 'outer;
            }
        }
        if let (Some(budget), Some(first)) = (config.post_solution_iterations, first_solution_iteration)
        {
            if iteration >= first.saturating_add(budget) {
                termination = TerminationReason::PostSolutionBudgetExhausted;
                break 'outer;
            }
        }
        if let Some(budget) = config.time_budget {
            if clock.elapsed_secs() >= budget {
                termination = TerminationReason::TimeBudgetExhausted;
                break 'outer;
            }
        }
    }

    // Best solution vertex; ties go to the smallest id for replayability.
    let best_id = solutions
        .iter()
        .copied()
        .min_by(|&a, &b| {
            tree.cost[a as usize]
                .total_cmp(&tree.cost[b as usize])
                .then(a.cmp(&b))
        })
        .map(VertexId);
    let best_cost = best_id.map_or(Cost::INFINITY, |id| tree.cost_to_come(id));

    Ok(PlanResult {
        tree,
        solution_ids: solutions.into_iter().map(VertexId).collect(),
        best_id,
        best_cost,
        events,
        termination,
        iterations,
        first_solution_iteration,
        vertices_at_first_solution,
        elapsed_secs: clock.elapsed_secs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::path_cost;
    use crate::world::{wall_world, WallWorldParams, World};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn s(coords: &[f64]) -> StateVec {
        StateVec::new(coords.to_vec()).unwrap()
    }

    fn empty_problem(side: f64, d: f64, r_goal: f64) -> ProblemDef {
        let world = World::new(s(&[-side / 2.0, -side / 2.0]), s(&[side / 2.0, side / 2.0]), vec![])
            .unwrap();
        ProblemDef::new(world, s(&[-d / 2.0, 0.0]), s(&[d / 2.0, 0.0]), r_goal).unwrap()
    }

    #[test]
    fn steer_within_reach_returns_target() {
        let out = steer(&s(&[0.0, 0.0]), &s(&[1.0, 0.0]), 2.0);
        assert_eq!(out, s(&[1.0, 0.0]));
    }

    #[test]
    fn steer_at_double_range_returns_midpoint() {
        let out = steer(&s(&[0.0, 0.0]), &s(&[4.0, 0.0]), 2.0);
        assert_relative_eq!(out[0], 2.0);
        assert_relative_eq!(out[1], 0.0);
    }

    #[test]
    fn steer_output_collinear_and_bounded() {
        let from = s(&[1.0, 2.0, 3.0]);
        let to = s(&[-4.0, 0.5, 9.0]);
        let out = steer(&from, &to, 1.5);
        assert!(from.distance(&out) <= 1.5 + 1e-12);
        // Collinear: out - from is parallel to to - from.
        let d = from.distance(&to);
        let t = from.distance(&out) / d;
        for i in 0..3 {
            assert_abs_diff_eq!(out[i], from[i] + t * (to[i] - from[i]), epsilon = 1e-12);
        }
    }

    #[test]
    fn rewiring_radius_hand_value() {
        // n=2, measure 1e4, m=100, factor 1.1; evaluated with an independent
        // arrangement of the same expression.
        let r = rewiring_radius(100, 1e4, 2, 1.1, 999.0).unwrap();
        let independent = 1.1
            * ((4.0 * 1.5 * (1e4 / core::f64::consts::PI)) * (100f64.ln() / 100.0)).sqrt();
        assert_relative_eq!(r, independent, max_relative = 1e-12);
        assert_abs_diff_eq!(r, 32.62, epsilon = 0.01);
    }

    #[test]
    fn rewiring_radius_guard_and_monotonicity() {
        assert_relative_eq!(rewiring_radius(1, 1e4, 2, 1.1, 77.0).unwrap(), 77.0);
        assert!(rewiring_radius(10, 0.0, 2, 1.1, 1.0).is_err());
        let rs: Vec<f64> = (3..200)
            .map(|m| rewiring_radius(m, 1e4, 2, 1.1, 0.0).unwrap())
            .collect();
        assert!(rs.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn plan_solves_an_empty_world() {
        let problem = empty_problem(150.0, 100.0, 3.0);
        let config = PlannerConfig {
            max_iterations: 2_000,
            seed: 1,
            ..Default::default()
        };
        let result = plan(&problem, &config).unwrap();
        assert!(result.best_cost().is_finite());
        // Solutions terminate anywhere in the goal ball, so the admissible
        // floor on the reported cost is c_min - r_goal.
        assert!(result.best_cost().value() >= problem.c_min() - problem.r_goal() - 1e-9);
        let path = extract_path(&result).unwrap();
        assert_eq!(path.states()[0], *problem.x_start());
        assert_relative_eq!(
            path_cost(&path).value(),
            result.best_cost().value(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn best_cost_series_is_non_increasing() {
        let problem = empty_problem(150.0, 100.0, 3.0);
        let config = PlannerConfig { max_iterations: 5_000, seed: 3, ..Default::default() };
        let result = plan(&problem, &config).unwrap();
        let events = result.events();
        assert!(!events.is_empty());
        assert!(events.windows(2).all(|w| w[1].cost <= w[0].cost));
        assert!(events.windows(2).all(|w| w[1].iteration >= w[0].iteration));
    }

    #[test]
    fn tree_invariants_hold_after_a_run() {
        let problem = wall_world(&WallWorldParams { r_goal: 5.0, ..Default::default() }).unwrap();
        let config = PlannerConfig { max_iterations: 4_000, seed: 5, ..Default::default() };
        let result = plan(&problem, &config).unwrap();
        assert!(result.best_cost().is_finite(), "expected a solution in 4k iterations");
        let tree = result.tree();
        let world = problem.world();
        for i in 0..tree.len() {
            let id = VertexId(i as u32);
            let p = tree.parent(id);
            if i == 0 {
                assert_eq!(p, id);
                assert_eq!(tree.cost_to_come(id), Cost::ZERO);
                continue;
            }
            let edge = dist(tree.state(id), tree.state(p));
            assert_abs_diff_eq!(
                tree.cost_to_come(id).value(),
                tree.cost_to_come(p).value() + edge,
                epsilon = 1e-9
            );
            assert!(world.segment_free_unchecked(tree.state(p), tree.state(id)));
        }
    }

    #[test]
    fn same_seed_replays_identically() {
        let problem = empty_problem(150.0, 100.0, 3.0);
        let config = PlannerConfig { max_iterations: 1_500, seed: 8, ..Default::default() };
        let a = plan(&problem, &config).unwrap();
        let b = plan(&problem, &config).unwrap();
        assert_eq!(a.tree().len(), b.tree().len());
        assert_eq!(a.tree().coords, b.tree().coords);
        assert_eq!(a.best_cost(), b.best_cost());
    }

    #[test]
    fn forced_uniform_informed_matches_rrt_star() {
        let problem = empty_problem(150.0, 100.0, 3.0);
        let base = PlannerConfig { max_iterations: 1_200, seed: 21, ..Default::default() };
        let rrt = plan(
            &problem,
            &PlannerConfig { mode: PlannerMode::RrtStar, ..base.clone() },
        )
        .unwrap();
        let forced = plan(
            &problem,
            &PlannerConfig {
                mode: PlannerMode::InformedRrtStar,
                force_uniform_sampling: true,
                ..base
            },
        )
        .unwrap();
        assert_eq!(rrt.tree().coords, forced.tree().coords);
        assert_eq!(rrt.best_cost(), forced.best_cost());
    }

    #[test]
    fn modes_agree_up_to_the_first_solution() {
        let problem = wall_world(&WallWorldParams { r_goal: 5.0, ..Default::default() }).unwrap();
        let base = PlannerConfig { max_iterations: 6_000, seed: 13, ..Default::default() };
        let rrt = plan(&problem, &PlannerConfig { mode: PlannerMode::RrtStar, ..base.clone() }).unwrap();
        let inf =
            plan(&problem, &PlannerConfig { mode: PlannerMode::InformedRrtStar, ..base }).unwrap();
        assert_eq!(rrt.first_solution_iteration(), inf.first_solution_iteration());
        let shared = rrt.vertices_at_first_solution().unwrap();
        assert_eq!(shared, inf.vertices_at_first_solution().unwrap());
        let take = shared * problem.dim();
        assert_eq!(rrt.tree().coords[..take], inf.tree().coords[..take]);
    }

    #[test]
    fn informed_mode_beats_target_inside_wall_world() {
        let params = WallWorldParams { r_goal: 5.0, ..Default::default() };
        let problem = wall_world(&params).unwrap();
        let optimum = crate::world::analytic_optimum_wall(&params).unwrap().value();
        let config = PlannerConfig {
            max_iterations: 60_000,
            seed: 2,
            target_cost: Some(Cost::new(optimum * 1.02).unwrap()),
            ..Default::default()
        };
        let result = plan(&problem, &config).unwrap();
        assert_eq!(result.termination(), TerminationReason::TargetCostReached);
        assert!(result.best_cost().value() <= optimum * 1.02);
        assert!(result.best_cost().value() >= optimum - 1e-6);
    }

    #[test]
    fn start_inside_goal_ball_is_a_trivial_plan() {
        let world =
            World::new(s(&[-10.0, -10.0]), s(&[10.0, 10.0]), vec![]).unwrap();
        let problem = ProblemDef::new(world, s(&[0.0, 0.0]), s(&[0.5, 0.0]), 1.0).unwrap();
        let result = plan(&problem, &PlannerConfig::default()).unwrap();
        assert_eq!(result.termination(), TerminationReason::StartInGoalRegion);
        assert_eq!(result.best_cost(), Cost::ZERO);
        let path = extract_path(&result).unwrap();
        assert_eq!(path.len(), 1);
    }

    #[test]
    fn post_solution_budget_stops_the_run() {
        let problem = empty_problem(150.0, 100.0, 3.0);
        let config = PlannerConfig {
            max_iterations: 100_000,
            post_solution_iterations: Some(500),
            seed: 4,
            ..Default::default()
        };
        let result = plan(&problem, &config).unwrap();
        assert_eq!(result.termination(), TerminationReason::PostSolutionBudgetExhausted);
        let first = result.first_solution_iteration().unwrap();
        assert_eq!(result.iterations(), first + 500);
    }

    #[test]
    fn no_solution_yet_reports_infinite_cost() {
        let problem = empty_problem(150.0, 100.0, 3.0);
        let config = PlannerConfig { max_iterations: 1, seed: 0, ..Default::default() };
        let result = plan(&problem, &config).unwrap();
        assert_eq!(result.best_cost(), Cost::INFINITY);
        assert!(matches!(extract_path(&result), Err(Error::NoSolution)));
    }
}
