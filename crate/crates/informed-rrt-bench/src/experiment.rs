//! Experiment families and the paired-seed runner.
//!
//! A family defines a list of cells (parameter settings). For every cell and
//! seed the runner builds one world and executes BOTH planner modes on it
//! with the same planner seed, so per-seed comparisons are paired. Records
//! are written in canonical run-id order regardless of execution order.

use std::path::Path;

use rayon::prelude::*;

use informed_rrt::planner::{plan, PlannerConfig, PlannerMode};
use informed_rrt::types::{Cost, ProblemDef};
use informed_rrt::world::{
    analytic_optimum_wall, flanking_cost, gap_world, problem_to_text, random_world, wall_world,
    GapWorldParams, RandomWorldSpec, WallWorldParams,
};

use crate::config::ConfigMap;
use crate::records::{fnv1a64, raw_csv, runs_csv, splitmix64, summary_csv, RunRecord};
use crate::stats::{median_ci, SummaryRow};
use crate::{plot, BenchError, Result};

/// One experiment family with its fixed geometry parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// Obstacle-free convergence to a tight relative tolerance of the
    /// straight-line cost.
    MachineZero { d: f64, l: f64, r_goal: f64, target_rel_err: f64 },
    /// Wall world at several map widths, run to a fixed cost tolerance.
    WallWidth { d: f64, w: f64, h: f64, r_goal: f64, widths: Vec<f64>, tolerance: f64 },
    /// Wall world at a fixed size, run to several cost tolerances.
    Tolerance { l: f64, d: f64, w: f64, h: f64, r_goal: f64, tolerances: Vec<f64> },
    /// Wall with a narrow opening; run until a solution cheaper than any
    /// flanking route exists.
    Gap { l: f64, d: f64, w: f64, h: f64, r_goal: f64, gap_ratios: Vec<f64>, off_centre: f64 },
    /// Random box worlds per dimension with a fixed post-solution budget.
    RandomWorlds { dims: Vec<usize>, post_iters: u64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::MachineZero { .. } => "machine_zero",
            Family::WallWidth { .. } => "wall_width",
            Family::Tolerance { .. } => "tolerance",
            Family::Gap { .. } => "gap",
            Family::RandomWorlds { .. } => "random_worlds",
        }
    }

    pub fn machine_zero_defaults() -> Self {
        Family::MachineZero { d: 100.0, l: 110.0, r_goal: 1.0, target_rel_err: 1e-6 }
    }

    pub fn wall_width_defaults() -> Self {
        Family::WallWidth {
            d: 100.0,
            w: 10.0,
            h: 50.0,
            r_goal: 5.0,
            widths: vec![100.0, 200.0, 400.0],
            tolerance: 0.02,
        }
    }

    pub fn tolerance_defaults() -> Self {
        Family::Tolerance {
            l: 200.0,
            d: 100.0,
            w: 10.0,
            h: 50.0,
            r_goal: 5.0,
            tolerances: vec![0.10, 0.05, 0.02],
        }
    }

    pub fn gap_defaults() -> Self {
        Family::Gap {
            l: 200.0,
            d: 100.0,
            w: 10.0,
            h: 100.0,
            r_goal: 5.0,
            gap_ratios: vec![0.05],
            off_centre: 0.03,
        }
    }

    pub fn random_worlds_defaults() -> Self {
        Family::RandomWorlds { dims: vec![2, 4], post_iters: 200_000 }
    }
}

/// Per-dimension defaults for random worlds: obstacle count, edge-length
/// range, goal radius. The goal ball must stay hittable by uniform samples,
/// so its radius grows with dimension.
pub fn random_world_defaults(n: usize) -> Result<(usize, (f64, f64), f64)> {
    match n {
        2 => Ok((30, (5.0, 25.0), 1.5)),
        3 => Ok((20, (10.0, 30.0), 4.0)),
        4 => Ok((10, (20.0, 50.0), 9.0)),
        5 => Ok((8, (25.0, 55.0), 14.0)),
        6 => Ok((6, (30.0, 60.0), 20.0)),
        other => Err(BenchError::Parse(format!(
            "random worlds support dimensions 2..=6, got {other}"
        ))),
    }
}

/// A full experiment description; serializable to the flat config format.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub family: Family,
    pub runs_per_cell: usize,
    pub base_seed: u64,
    pub max_iterations: u64,
    pub time_budget: Option<f64>,
    pub gamma_factor: f64,
}

impl ExperimentSpec {
    pub fn new(family: Family) -> Self {
        let max_iterations = match family {
            Family::MachineZero { .. } => 20_000,
            Family::RandomWorlds { .. } => 400_000,
            _ => 400_000,
        };
        Self {
            family,
            runs_per_cell: 100,
            base_seed: 1,
            max_iterations,
            time_budget: None,
            gamma_factor: 1.1,
        }
    }

    pub fn to_config(&self) -> ConfigMap {
        let mut c = ConfigMap::new();
        c.set("family", self.family.name());
        c.set("runs_per_cell", self.runs_per_cell);
        c.set("base_seed", self.base_seed);
        c.set("max_iterations", self.max_iterations);
        if let Some(t) = self.time_budget {
            c.set("time_budget", t);
        }
        c.set("gamma_factor", self.gamma_factor);
        match &self.family {
            Family::MachineZero { d, l, r_goal, target_rel_err } => {
                c.set("d", d);
                c.set("l", l);
                c.set("r_goal", r_goal);
                c.set("target_rel_err", target_rel_err);
            }
            Family::WallWidth { d, w, h, r_goal, widths, tolerance } => {
                c.set("d", d);
                c.set("w", w);
                c.set("h", h);
                c.set("r_goal", r_goal);
                c.set_list("widths", widths);
                c.set("tolerance", tolerance);
            }
            Family::Tolerance { l, d, w, h, r_goal, tolerances } => {
                c.set("l", l);
                c.set("d", d);
                c.set("w", w);
                c.set("h", h);
                c.set("r_goal", r_goal);
                c.set_list("tolerances", tolerances);
            }
            Family::Gap { l, d, w, h, r_goal, gap_ratios, off_centre } => {
                c.set("l", l);
                c.set("d", d);
                c.set("w", w);
                c.set("h", h);
                c.set("r_goal", r_goal);
                c.set_list("gap_ratios", gap_ratios);
                c.set("off_centre", off_centre);
            }
            Family::RandomWorlds { dims, post_iters } => {
                c.set_list("dims", &dims.iter().map(|d| *d as u64).collect::<Vec<_>>());
                c.set("post_iters", post_iters);
            }
        }
        c
    }

    pub fn from_config(c: &ConfigMap) -> Result<Self> {
        let family_name = c.require("family")?.to_string();
        let f = |key: &str, default: f64| -> Result<f64> {
            Ok(c.get_f64(key)?.unwrap_or(default))
        };
        let family = match family_name.as_str() {
            "machine_zero" => Family::MachineZero {
                d: f("d", 100.0)?,
                l: f("l", 110.0)?,
                r_goal: f("r_goal", 1.0)?,
                target_rel_err: f("target_rel_err", 1e-6)?,
            },
            "wall_width" => Family::WallWidth {
                d: f("d", 100.0)?,
                w: f("w", 10.0)?,
                h: f("h", 50.0)?,
                r_goal: f("r_goal", 5.0)?,
                widths: c.get_f64_list("widths")?.unwrap_or_else(|| vec![100.0, 200.0, 400.0]),
                tolerance: f("tolerance", 0.02)?,
            },
            "tolerance" => Family::Tolerance {
                l: f("l", 200.0)?,
                d: f("d", 100.0)?,
                w: f("w", 10.0)?,
                h: f("h", 50.0)?,
                r_goal: f("r_goal", 5.0)?,
                tolerances: c.get_f64_list("tolerances")?.unwrap_or_else(|| vec![0.10, 0.05, 0.02]),
            },
            "gap" => Family::Gap {
                l: f("l", 200.0)?,
                d: f("d", 100.0)?,
                w: f("w", 10.0)?,
                h: f("h", 100.0)?,
                r_goal: f("r_goal", 5.0)?,
                gap_ratios: c.get_f64_list("gap_ratios")?.unwrap_or_else(|| vec![0.05]),
                off_centre: f("off_centre", 0.03)?,
            },
            "random_worlds" => Family::RandomWorlds {
                dims: c
                    .get_f64_list("dims")?
                    .unwrap_or_else(|| vec![2.0, 4.0])
                    .into_iter()
                    .map(|d| d as usize)
                    .collect(),
                post_iters: c.get_u64("post_iters")?.unwrap_or(200_000),
            },
            other => return Err(BenchError::Parse(format!("unknown family {other:?}"))),
        };
        let mut spec = ExperimentSpec::new(family);
        if let Some(v) = c.get_u64("runs_per_cell")? {
            spec.runs_per_cell = v as usize;
        }
        if let Some(v) = c.get_u64("base_seed")? {
            spec.base_seed = v;
        }
        if let Some(v) = c.get_u64("max_iterations")? {
            spec.max_iterations = v;
        }
        spec.time_budget = c.get_f64("time_budget")?;
        if let Some(v) = c.get_f64("gamma_factor")? {
            spec.gamma_factor = v;
        }
        Ok(spec)
    }
}

/// How a cell obtains its world.
#[derive(Clone, Debug)]
enum CellWorld {
    Fixed(ProblemDef),
    RandomPerSeed { template: RandomWorldSpec },
}

#[derive(Clone, Debug)]
struct Cell {
    params: Vec<(String, String)>,
    world: CellWorld,
    target_cost: Option<f64>,
    post_solution_iterations: Option<u64>,
}

fn fmt_pairs(pairs: &[(&str, f64)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn build_cells(spec: &ExperimentSpec) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    match &spec.family {
        Family::MachineZero { d, l, r_goal, target_rel_err } => {
            let problem = informed_rrt::world::empty_world(2, *l, *d, *r_goal)?;
            cells.push(Cell {
                params: fmt_pairs(&[
                    ("d", *d),
                    ("l", *l),
                    ("r_goal", *r_goal),
                    ("target_rel_err", *target_rel_err),
                ]),
                world: CellWorld::Fixed(problem),
                target_cost: Some(d * (1.0 + target_rel_err)),
                post_solution_iterations: None,
            });
        }
        Family::WallWidth { d, w, h, r_goal, widths, tolerance } => {
            for &l in widths {
                let params = WallWorldParams {
                    dim: 2,
                    map_width: l,
                    start_goal_distance: *d,
                    wall_thickness: *w,
                    wall_extent: *h,
                    wall_offset: 0.0,
                    r_goal: *r_goal,
                };
                let optimum = analytic_optimum_wall(&params)?.value();
                cells.push(Cell {
                    params: fmt_pairs(&[
                        ("l", l),
                        ("d", *d),
                        ("w", *w),
                        ("h", *h),
                        ("r_goal", *r_goal),
                        ("tolerance", *tolerance),
                    ]),
                    world: CellWorld::Fixed(wall_world(&params)?),
                    target_cost: Some(optimum * (1.0 + tolerance)),
                    post_solution_iterations: None,
                });
            }
        }
        Family::Tolerance { l, d, w, h, r_goal, tolerances } => {
            let params = WallWorldParams {
                dim: 2,
                map_width: *l,
                start_goal_distance: *d,
                wall_thickness: *w,
                wall_extent: *h,
                wall_offset: 0.0,
                r_goal: *r_goal,
            };
            let optimum = analytic_optimum_wall(&params)?.value();
            let problem = wall_world(&params)?;
            for &tol in tolerances {
                cells.push(Cell {
                    params: fmt_pairs(&[
                        ("tolerance", tol),
                        ("l", *l),
                        ("d", *d),
                        ("w", *w),
                        ("h", *h),
                        ("r_goal", *r_goal),
                    ]),
                    world: CellWorld::Fixed(problem.clone()),
                    target_cost: Some((optimum - r_goal) * (1.0 + tol)),
                    post_solution_iterations: None,
                });
            }
        }
        Family::Gap { l, d, w, h, r_goal, gap_ratios, off_centre } => {
            for &ratio in gap_ratios {
                let params = GapWorldParams {
                    map_width: *l,
                    start_goal_distance: *d,
                    wall_thickness: *w,
                    wall_extent: *h,
                    gap_height: ratio * h,
                    gap_offset: off_centre * h,
                    r_goal: *r_goal,
                };
                let flank = flanking_cost(&params).value();
                cells.push(Cell {
                    params: fmt_pairs(&[
                        ("gap_ratio", ratio),
                        ("l", *l),
                        ("d", *d),
                        ("w", *w),
                        ("h", *h),
                        ("y_g", off_centre * h),
                        ("r_goal", *r_goal),
                    ]),
                    world: CellWorld::Fixed(gap_world(&params)?),
                    // Strictly cheaper than any flanking route, measured on
                    // the goal ball: flanking can undercut its own optimum
                    // by at most r_goal.
                    target_cost: Some((flank - r_goal) * (1.0 - 1e-9)),
                    post_solution_iterations: None,
                });
            }
        }
        Family::RandomWorlds { dims, post_iters } => {
            for &n in dims {
                let (obstacle_count, size_range, r_goal) = random_world_defaults(n)?;
                let template = RandomWorldSpec {
                    dim: n,
                    seed: 0, // overwritten per run
                    obstacle_count,
                    size_range,
                    bounds_lo: vec![0.0; n],
                    bounds_hi: vec![100.0; n],
                    start: vec![10.0; n],
                    goal: vec![90.0; n],
                    r_goal,
                };
                cells.push(Cell {
                    params: vec![
                        ("n".into(), n.to_string()),
                        ("obstacles".into(), obstacle_count.to_string()),
                        ("size_lo".into(), size_range.0.to_string()),
                        ("size_hi".into(), size_range.1.to_string()),
                        ("r_goal".into(), r_goal.to_string()),
                        ("post_iters".into(), post_iters.to_string()),
                    ],
                    world: CellWorld::RandomPerSeed { template },
                    target_cost: None,
                    post_solution_iterations: Some(*post_iters),
                });
            }
        }
    }
    Ok(cells)
}

const MODES: [PlannerMode; 2] = [PlannerMode::RrtStar, PlannerMode::InformedRrtStar];

/// Everything an experiment produced, before and after being written out.
#[derive(Debug)]
pub struct ExperimentOutcome {
    pub records: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
    pub failures: usize,
}

impl ExperimentOutcome {
    /// Convenience lookup in the summary table.
    pub fn summary_row(&self, cell_kv: (&str, &str), planner: &str, metric: &str) -> Option<&SummaryRow> {
        self.summary.iter().find(|row| {
            row.planner == planner
                && row.metric == metric
                && row.cell.iter().any(|(k, v)| k == cell_kv.0 && v == cell_kv.1)
        })
    }
}

/// Runs every (cell, seed, mode) task, writes the output files into
/// `out_dir`, and returns the records and summary.
pub fn run_experiment(spec: &ExperimentSpec, out_dir: &Path, render: bool) -> Result<ExperimentOutcome> {
    let cells = build_cells(spec)?;
    let family = spec.family.name();

    let tasks: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..spec.runs_per_cell).map(move |s| (c, s)))
        .collect();

    let results: Vec<Vec<RunRecord>> = tasks
        .par_iter()
        .map(|&(cell_idx, seed_idx)| run_pair(spec, family, &cells[cell_idx], cell_idx, seed_idx))
        .collect();

    let mut records: Vec<RunRecord> = results.into_iter().flatten().collect();
    records.sort_by(|a, b| a.run_id.cmp(&b.run_id));

    let summary = summarize(family, &records);
    let failures = records.iter().filter(|r| r.failed()).count();

    std::fs::create_dir_all(out_dir).map_err(|e| BenchError::io(out_dir, e))?;
    let write = |name: &str, text: &str| -> Result<()> {
        let path = out_dir.join(name);
        std::fs::write(&path, text).map_err(|e| BenchError::io(&path, e))
    };
    write("config.txt", &spec.to_config().to_text())?;
    write("raw.csv", &raw_csv(&records))?;
    write("runs.csv", &runs_csv(&records))?;
    write("summary.csv", &summary_csv(&summary))?;
    plot::emit_plot_data(&summary, plot::PlotFormat::Tsv, out_dir)?;

    if render {
        render_cells(spec, &cells, family, out_dir)?;
    }

    Ok(ExperimentOutcome { records, summary, failures })
}

/// Replays a single (cell, seed, mode) coordinate from a raw.csv row and
/// returns its record.
pub fn replay_run(row: &crate::records::RawRow) -> Result<RunRecord> {
    let mut config = ConfigMap::new();
    config.set("family", row.family.clone());
    for (k, v) in &row.cell {
        // Cell params are a subset of the family config keys; lists collapse
        // to the single replayed value.
        let key = match (row.family.as_str(), k.as_str()) {
            ("wall_width", "l") => "widths",
            ("tolerance", "tolerance") => "tolerances",
            ("gap", "gap_ratio") => "gap_ratios",
            ("random_worlds", "n") => "dims",
            (_, other) => other,
        };
        config.set(key, v.clone());
    }
    if row.family == "gap" {
        // y_g = off_centre * h; recover the fraction.
        let y_g: f64 = config
            .get_f64("y_g")?
            .ok_or_else(|| BenchError::Parse("gap row is missing y_g".into()))?;
        let h: f64 = config
            .get_f64("h")?
            .ok_or_else(|| BenchError::Parse("gap row is missing h".into()))?;
        config.set("off_centre", y_g / h);
    }
    let mut spec = ExperimentSpec::from_config(&config)?;
    spec.runs_per_cell = 1;
    // seed_idx 0 on top of base_seed reproduces the recorded run seed, and
    // with it the world derivation and the planner stream.
    spec.base_seed = row.seed;

    let cells = build_cells(&spec)?;
    let cell = cells
        .first()
        .ok_or_else(|| BenchError::Parse("replay row describes no cell".into()))?;
    let records = run_pair(&spec, spec.family.name(), cell, 0, 0);
    records
        .into_iter()
        .find(|r| r.planner == row.planner)
        .ok_or_else(|| BenchError::Parse(format!("unknown planner {:?}", row.planner)))
}

fn run_pair(
    spec: &ExperimentSpec,
    family: &str,
    cell: &Cell,
    cell_idx: usize,
    seed_idx: usize,
) -> Vec<RunRecord> {
    let run_seed = spec.base_seed + seed_idx as u64;
    let make_id = |mode: PlannerMode| format!("{family}-c{cell_idx:02}-s{seed_idx:04}-{}", mode.label());

    let problem = match &cell.world {
        CellWorld::Fixed(p) => Ok(p.clone()),
        CellWorld::RandomPerSeed { template } => {
            let mut world_spec = template.clone();
            world_spec.seed = splitmix64(run_seed ^ ((template.dim as u64) << 32));
            random_world(&world_spec).map_err(BenchError::from)
        }
    };
    let problem = match problem {
        Ok(p) => p,
        Err(e) => {
            // World generation failed: both mode rows carry the failure.
            return MODES
                .iter()
                .map(|&mode| RunRecord {
                    run_id: make_id(mode),
                    family: family.into(),
                    cell: cell.params.clone(),
                    planner: mode.label().into(),
                    seed: run_seed,
                    world_hash: 0,
                    events: Vec::new(),
                    termination: "failed".into(),
                    final_cost: f64::INFINITY,
                    iterations: 0,
                    first_solution_iteration: None,
                    elapsed_secs: 0.0,
                    failure: Some(e.to_string()),
                })
                .collect();
        }
    };
    let world_hash = fnv1a64(problem_to_text(&problem).as_bytes());

    MODES
        .iter()
        .map(|&mode| {
            let config = PlannerConfig {
                mode,
                gamma_factor: spec.gamma_factor,
                max_iterations: spec.max_iterations,
                post_solution_iterations: cell.post_solution_iterations,
                time_budget: spec.time_budget,
                seed: run_seed,
                target_cost: cell
                    .target_cost
                    .map(|t| Cost::new(t).expect("targets are non-negative")),
                ..Default::default()
            };
            match plan(&problem, &config) {
                Ok(result) => RunRecord {
                    run_id: make_id(mode),
                    family: family.into(),
                    cell: cell.params.clone(),
                    planner: mode.label().into(),
                    seed: run_seed,
                    world_hash,
                    events: result.events().to_vec(),
                    termination: result.termination().label().into(),
                    final_cost: result.best_cost().value(),
                    iterations: result.iterations(),
                    first_solution_iteration: result.first_solution_iteration(),
                    elapsed_secs: result.elapsed_secs(),
                    failure: None,
                },
                Err(e) => RunRecord {
                    run_id: make_id(mode),
                    family: family.into(),
                    cell: cell.params.clone(),
                    planner: mode.label().into(),
                    seed: run_seed,
                    world_hash,
                    events: Vec::new(),
                    termination: "failed".into(),
                    final_cost: f64::INFINITY,
                    iterations: 0,
                    first_solution_iteration: None,
                    elapsed_secs: 0.0,
                    failure: Some(e.to_string()),
                },
            }
        })
        .collect()
}

/// Builds the summary table: per (cell, planner) medians, plus per-cell
/// paired cost differences for the random-worlds family.
pub fn summarize(family: &str, records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    let mut cells: Vec<Vec<(String, String)>> = Vec::new();
    for r in records {
        if !cells.contains(&r.cell) {
            cells.push(r.cell.clone());
        }
    }

    let iteration_metric = family != "random_worlds";
    for cell in &cells {
        for planner in ["rrt_star", "informed"] {
            let group: Vec<&RunRecord> = records
                .iter()
                .filter(|r| &r.cell == cell && r.planner == planner)
                .collect();
            let failures = group.iter().filter(|r| r.failed()).count();
            let ok: Vec<&&RunRecord> = group.iter().filter(|r| !r.failed()).collect();
            if ok.is_empty() {
                rows.push(SummaryRow {
                    cell: cell.clone(),
                    planner: planner.into(),
                    metric: "empty_cell".into(),
                    median: f64::NAN,
                    ci_lo: f64::NAN,
                    ci_hi: f64::NAN,
                    n: 0,
                    failures,
                    low_n: true,
                });
                continue;
            }
            if iteration_metric {
                let values: Vec<f64> = ok.iter().map(|r| r.iterations as f64).collect();
                push_metric(&mut rows, cell, planner, "iterations_to_target", &values, failures);
            }
            let finite: Vec<f64> =
                ok.iter().map(|r| r.final_cost).filter(|c| c.is_finite()).collect();
            if !finite.is_empty() {
                push_metric(&mut rows, cell, planner, "final_cost", &finite, failures);
            }
        }

        if family == "random_worlds" {
            // Paired relative difference (c_rrt* - c_informed) / c_rrt*.
            let mut diffs = Vec::new();
            let mut failures = 0;
            let seeds: Vec<u64> = {
                let mut s: Vec<u64> = records
                    .iter()
                    .filter(|r| &r.cell == cell)
                    .map(|r| r.seed)
                    .collect();
                s.sort_unstable();
                s.dedup();
                s
            };
            for seed in seeds {
                let find = |planner: &str| {
                    records
                        .iter()
                        .find(|r| &r.cell == cell && r.seed == seed && r.planner == planner)
                };
                match (find("rrt_star"), find("informed")) {
                    (Some(a), Some(b)) if !a.failed() && !b.failed() => {
                        if a.final_cost.is_finite() && b.final_cost.is_finite() {
                            diffs.push((a.final_cost - b.final_cost) / a.final_cost);
                        }
                    }
                    _ => failures += 1,
                }
            }
            if !diffs.is_empty() {
                push_metric(&mut rows, cell, "paired", "rel_cost_diff", &diffs, failures);
            }
        }
    }
    rows
}

fn push_metric(
    rows: &mut Vec<SummaryRow>,
    cell: &[(String, String)],
    planner: &str,
    metric: &str,
    values: &[f64],
    failures: usize,
) {
    if let Some((median, ci_lo, ci_hi, low_n)) = median_ci(values) {
        rows.push(SummaryRow {
            cell: cell.to_vec(),
            planner: planner.into(),
            metric: metric.into(),
            median,
            ci_lo,
            ci_hi,
            n: values.len(),
            failures,
            low_n,
        });
    }
}

fn render_cells(spec: &ExperimentSpec, cells: &[Cell], family: &str, out_dir: &Path) -> Result<()> {
    for (cell_idx, cell) in cells.iter().enumerate() {
        let CellWorld::Fixed(problem) = &cell.world else { continue };
        if problem.dim() != 2 {
            continue;
        }
        for mode in MODES {
            let config = PlannerConfig {
                mode,
                gamma_factor: spec.gamma_factor,
                max_iterations: spec.max_iterations.min(20_000),
                seed: spec.base_seed,
                target_cost: cell.target_cost.map(|t| Cost::new(t).expect("non-negative")),
                ..Default::default()
            };
            if let Ok(result) = plan(problem, &config) {
                let svg = plot::render_run_svg(problem, Some(&result));
                let name = format!("render-{family}-c{cell_idx:02}-{}.svg", mode.label());
                let path = out_dir.join(name);
                std::fs::write(&path, svg).map_err(|e| BenchError::io(&path, e))?;
            }
        }
    }
    Ok(())
}
