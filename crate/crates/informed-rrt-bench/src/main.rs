//! `irrt-bench`: experiment runner comparing RRT* and Informed RRT*.
//!
//! One subcommand per experiment family plus `replay` for reproducing a
//! single run from a raw.csv row. Exit codes: 0 success, 1 usage or
//! internal error, 2 when any cell recorded a failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};

use informed_rrt_bench::config::ConfigMap;
use informed_rrt_bench::experiment::{replay_run, run_experiment, ExperimentSpec, Family};
use informed_rrt_bench::records::parse_raw_row;

#[derive(Parser, Debug)]
#[command(
    name = "irrt-bench",
    about = "Paired-seed benchmarks of RRT* vs Informed RRT*",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Output directory for config.txt, raw.csv, runs.csv, summary.csv and
    /// series files.
    #[arg(long, default_value = "bench-out")]
    out: PathBuf,
    /// Base seed; run k uses seed base_seed + k.
    #[arg(long)]
    seed: Option<u64>,
    /// Runs (seeds) per cell.
    #[arg(long)]
    runs: Option<u64>,
    /// Per-run wall-clock budget in seconds.
    #[arg(long)]
    time_budget: Option<f64>,
    /// Per-run iteration cap.
    #[arg(long)]
    max_iter: Option<u64>,
    /// Flat key=value config file; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write SVG snapshots of seed-0 runs for 2-d cells.
    #[arg(long)]
    render: bool,
}

#[derive(Args, Debug, Default)]
struct GeometryOverrides {
    /// Start-goal distance d.
    #[arg(long)]
    d: Option<f64>,
    /// Map width l (fixed-width families).
    #[arg(long)]
    l: Option<f64>,
    /// Wall thickness w.
    #[arg(long)]
    w: Option<f64>,
    /// Wall extent h.
    #[arg(long = "wall-extent")]
    h: Option<f64>,
    /// Goal-ball radius.
    #[arg(long)]
    r_goal: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Obstacle-free convergence to a tight tolerance of the straight line.
    MachineZero {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        geo: GeometryOverrides,
        /// Relative error defining the stop target.
        #[arg(long)]
        target_rel_err: Option<f64>,
    },
    /// Wall world across map widths at a fixed cost tolerance.
    WallWidth {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        geo: GeometryOverrides,
        /// Comma-separated list of map widths.
        #[arg(long, value_delimiter = ',')]
        widths: Option<Vec<f64>>,
        /// Cost tolerance relative to the analytic optimum.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Wall world at one size across cost tolerances.
    Tolerance {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        geo: GeometryOverrides,
        /// Comma-separated list of cost tolerances.
        #[arg(long, value_delimiter = ',')]
        tolerances: Option<Vec<f64>>,
    },
    /// Wall with a narrow gap; run until a through-gap solution beats
    /// every flanking route.
    Gap {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        geo: GeometryOverrides,
        /// Comma-separated gap ratios h_g / h.
        #[arg(long, value_delimiter = ',')]
        gap_ratios: Option<Vec<f64>>,
        /// Gap centre offset as a fraction of the wall extent.
        #[arg(long)]
        off_centre: Option<f64>,
    },
    /// Random box worlds per dimension with a post-solution budget.
    RandomWorlds {
        #[command(flatten)]
        common: Common,
        /// Comma-separated state dimensions (2..=6).
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<u64>>,
        /// Iterations granted after the first solution.
        #[arg(long)]
        post_iters: Option<u64>,
    },
    /// Re-run one (family, cell, seed, planner) coordinate from a raw.csv
    /// data row and print its cost timeline.
    Replay {
        /// The raw.csv row, quoted.
        row: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> informed_rrt_bench::Result<ExitCode> {
    let (common, mut config) = match cli.command {
        Command::MachineZero { common, geo, target_rel_err } => {
            let mut c = base_config(Family::machine_zero_defaults(), &common)?;
            apply_geometry(&mut c, &geo);
            set_opt(&mut c, "target_rel_err", target_rel_err);
            (common, c)
        }
        Command::WallWidth { common, geo, widths, tolerance } => {
            let mut c = base_config(Family::wall_width_defaults(), &common)?;
            apply_geometry(&mut c, &geo);
            if let Some(widths) = widths {
                c.set_list("widths", &widths);
            }
            set_opt(&mut c, "tolerance", tolerance);
            (common, c)
        }
        Command::Tolerance { common, geo, tolerances } => {
            let mut c = base_config(Family::tolerance_defaults(), &common)?;
            apply_geometry(&mut c, &geo);
            if let Some(t) = tolerances {
                c.set_list("tolerances", &t);
            }
            (common, c)
        }
        Command::Gap { common, geo, gap_ratios, off_centre } => {
            let mut c = base_config(Family::gap_defaults(), &common)?;
            apply_geometry(&mut c, &geo);
            if let Some(r) = gap_ratios {
                c.set_list("gap_ratios", &r);
            }
            set_opt(&mut c, "off_centre", off_centre);
            (common, c)
        }
        Command::RandomWorlds { common, dims, post_iters } => {
            let mut c = base_config(Family::random_worlds_defaults(), &common)?;
            if let Some(dims) = dims {
                c.set_list("dims", &dims);
            }
            set_opt(&mut c, "post_iters", post_iters);
            (common, c)
        }
        Command::Replay { row } => {
            let parsed = parse_raw_row(&row)?;
            let record = replay_run(&parsed)?;
            println!(
                "replayed {} (seed {}, termination {}, final cost {})",
                record.run_id, record.seed, record.termination, record.final_cost
            );
            println!("iteration\ttime_s\tbest_cost");
            for ev in &record.events {
                println!("{}\t{}\t{}", ev.iteration, ev.elapsed_secs, ev.cost.value());
            }
            return Ok(ExitCode::SUCCESS);
        }
    };

    if let Some(seed) = common.seed {
        config.set("base_seed", seed);
    }
    if let Some(runs) = common.runs {
        config.set("runs_per_cell", runs);
    }
    if let Some(t) = common.time_budget {
        config.set("time_budget", t);
    }
    if let Some(m) = common.max_iter {
        config.set("max_iterations", m);
    }

    let spec = ExperimentSpec::from_config(&config)?;
    let outcome = run_experiment(&spec, &common.out, common.render)?;

    println!(
        "{}: {} runs, {} failures -> {}",
        spec.family.name(),
        outcome.records.len(),
        outcome.failures,
        common.out.display()
    );
    for row in &outcome.summary {
        let cell: Vec<String> = row.cell.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!(
            "  [{}] {} {} = {} (95% CI [{}, {}], n={}{})",
            cell.join(" "),
            row.planner,
            row.metric,
            row.median,
            row.ci_lo,
            row.ci_hi,
            row.n,
            if row.low_n { ", low n" } else { "" }
        );
    }

    if outcome.failures > 0 {
        eprintln!("{} run(s) failed; see runs.csv", outcome.failures);
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn base_config(family: Family, common: &Common) -> informed_rrt_bench::Result<ConfigMap> {
    let mut c = ExperimentSpec::new(family).to_config();
    if let Some(path) = &common.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| informed_rrt_bench::BenchError::io(path, e))?;
        for (k, v) in ConfigMap::from_text(&text)?.entries() {
            c.set(k, v.clone());
        }
    }
    Ok(c)
}

fn apply_geometry(c: &mut ConfigMap, geo: &GeometryOverrides) {
    set_opt(c, "d", geo.d);
    set_opt(c, "l", geo.l);
    set_opt(c, "w", geo.w);
    set_opt(c, "h", geo.h);
    set_opt(c, "r_goal", geo.r_goal);
}

fn set_opt<T: ToString>(c: &mut ConfigMap, key: &str, value: Option<T>) {
    if let Some(v) = value {
        c.set(key, v);
    }
}

#[allow(dead_code)]
fn debug_help() {
    // Keeps clap's derive checked in tests.
    Cli::command().debug_assert();
}
