//! Run records and the CSV file formats.
//!
//! Three files per experiment:
//! - `raw.csv`: one row per cost event, columns
//!   `run_id, family, <cell params>, planner, seed, event_iter, event_time_s, event_cost`.
//! - `runs.csv`: one row per run with world hash, termination, final cost,
//!   iteration counts, and the failure column.
//! - `summary.csv`: one row per (cell, planner, metric), columns
//!   `<cell params>, planner, metric_name, median, ci_lo, ci_hi, n, failures`.
//!
//! All numeric values print in shortest round-trip form; everything except
//! the wall-clock columns is deterministic for a given experiment config.

use std::fmt::Write as _;

use informed_rrt::planner::CostEvent;

use crate::stats::SummaryRow;
use crate::{BenchError, Result};

/// Everything recorded about one planner run.
#[derive(Clone, Debug)]
pub struct RunRecord {
    pub run_id: String,
    pub family: String,
    /// Ordered cell parameters; identical keys across one experiment.
    pub cell: Vec<(String, String)>,
    pub planner: String,
    pub seed: u64,
    /// FNV-1a hash of the serialized problem; equal across the mode pair.
    pub world_hash: u64,
    pub events: Vec<CostEvent>,
    pub termination: String,
    pub final_cost: f64,
    pub iterations: u64,
    pub first_solution_iteration: Option<u64>,
    pub elapsed_secs: f64,
    /// Set when the run could not execute (e.g. world generation failed).
    pub failure: Option<String>,
}

impl RunRecord {
    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }
}

pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn cell_keys(records: &[RunRecord]) -> Vec<String> {
    records
        .first()
        .map(|r| r.cell.iter().map(|(k, _)| k.clone()).collect())
        .unwrap_or_default()
}

/// Renders `raw.csv`: one row per cost event, runs in canonical order.
pub fn raw_csv(records: &[RunRecord]) -> String {
    let keys = cell_keys(records);
    let mut out = String::new();
    let _ = write!(out, "run_id,family");
    for k in &keys {
        let _ = write!(out, ",{k}");
    }
    let _ = writeln!(out, ",planner,seed,event_iter,event_time_s,event_cost");
    for r in records {
        for ev in &r.events {
            let _ = write!(out, "{},{}", r.run_id, r.family);
            for (_, v) in &r.cell {
                let _ = write!(out, ",{v}");
            }
            let _ = writeln!(
                out,
                ",{},{},{},{},{}",
                r.planner,
                r.seed,
                ev.iteration,
                ev.elapsed_secs,
                ev.cost.value()
            );
        }
    }
    out
}

/// Renders `runs.csv`: one row per run.
pub fn runs_csv(records: &[RunRecord]) -> String {
    let keys = cell_keys(records);
    let mut out = String::new();
    let _ = write!(out, "run_id,family");
    for k in &keys {
        let _ = write!(out, ",{k}");
    }
    let _ = writeln!(
        out,
        ",planner,seed,world_hash,termination,final_cost,iterations,first_solution_iter,elapsed_s,failure"
    );
    for r in records {
        let _ = write!(out, "{},{}", r.run_id, r.family);
        for (_, v) in &r.cell {
            let _ = write!(out, ",{v}");
        }
        let first = r
            .first_solution_iteration
            .map(|v| v.to_string())
            .unwrap_or_else(|| "none".into());
        let _ = writeln!(
            out,
            ",{},{},{:016x},{},{},{},{},{},{}",
            r.planner,
            r.seed,
            r.world_hash,
            r.termination,
            r.final_cost,
            r.iterations,
            first,
            r.elapsed_secs,
            r.failure.as_deref().unwrap_or("")
        );
    }
    out
}

/// Renders `summary.csv`.
pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::new();
    if rows.is_empty() {
        return "planner,metric_name,median,ci_lo,ci_hi,n,failures\n".into();
    }
    for (k, _) in &rows[0].cell {
        let _ = write!(out, "{k},");
    }
    let _ = writeln!(out, "planner,metric_name,median,ci_lo,ci_hi,n,failures");
    for row in rows {
        for (_, v) in &row.cell {
            let _ = write!(out, "{v},");
        }
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.planner, row.metric, row.median, row.ci_lo, row.ci_hi, row.n, row.failures
        );
    }
    out
}

/// The fixed cell-parameter columns of each experiment family, as they
/// appear between `family` and `planner` in `raw.csv`. `replay` relies on
/// this to parse a row without the header line.
pub fn family_cell_keys(family: &str) -> Result<&'static [&'static str]> {
    match family {
        "machine_zero" => Ok(&["d", "l", "r_goal", "target_rel_err"]),
        "wall_width" => Ok(&["l", "d", "w", "h", "r_goal", "tolerance"]),
        "tolerance" => Ok(&["tolerance", "l", "d", "w", "h", "r_goal"]),
        "gap" => Ok(&["gap_ratio", "l", "d", "w", "h", "y_g", "r_goal"]),
        "random_worlds" => Ok(&["n", "obstacles", "size_lo", "size_hi", "r_goal", "post_iters"]),
        other => Err(BenchError::Parse(format!("unknown family {other:?}"))),
    }
}

/// A raw.csv data row, parsed back into its run coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct RawRow {
    pub run_id: String,
    pub family: String,
    pub cell: Vec<(String, String)>,
    pub planner: String,
    pub seed: u64,
    pub event_iter: u64,
    pub event_time_s: f64,
    pub event_cost: f64,
}

/// Parses one `raw.csv` data row (no header needed; the family field fixes
/// the cell columns).
pub fn parse_raw_row(line: &str) -> Result<RawRow> {
    let fields: Vec<&str> = line.trim().split(',').collect();
    if fields.len() < 7 {
        return Err(BenchError::Parse(format!("raw row has too few fields: {line:?}")));
    }
    let family = fields[1].to_string();
    let keys = family_cell_keys(&family)?;
    let expect = 2 + keys.len() + 5;
    if fields.len() != expect {
        return Err(BenchError::Parse(format!(
            "raw row for family {family} needs {expect} fields, got {}",
            fields.len()
        )));
    }
    let cell = keys
        .iter()
        .zip(&fields[2..2 + keys.len()])
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let tail = &fields[2 + keys.len()..];
    let parse_u64 = |s: &str, what: &str| {
        s.parse::<u64>()
            .map_err(|_| BenchError::Parse(format!("bad {what} {s:?} in raw row")))
    };
    let parse_f64 = |s: &str, what: &str| {
        s.parse::<f64>()
            .map_err(|_| BenchError::Parse(format!("bad {what} {s:?} in raw row")))
    };
    Ok(RawRow {
        run_id: fields[0].to_string(),
        family,
        cell,
        planner: tail[0].to_string(),
        seed: parse_u64(tail[1], "seed")?,
        event_iter: parse_u64(tail[2], "event_iter")?,
        event_time_s: parse_f64(tail[3], "event_time_s")?,
        event_cost: parse_f64(tail[4], "event_cost")?,
    })
}
