//! Plot-series files (tab-separated, one-line header) and static SVG
//! snapshots of 2-d runs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use informed_rrt::planner::PlanResult;
use informed_rrt::sampling::ProlateHyperspheroid;
use informed_rrt::types::ProblemDef;

use crate::stats::SummaryRow;
use crate::{BenchError, Result};

/// Output formats understood by [`emit_plot_data`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotFormat {
    Tsv,
}

impl PlotFormat {
    pub const SUPPORTED: &'static str = "tsv";

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "tsv" => Ok(PlotFormat::Tsv),
            other => Err(BenchError::UnsupportedFormat {
                got: other.to_string(),
                supported: Self::SUPPORTED,
            }),
        }
    }
}

/// Writes one series file per metric into `out_dir`: cell parameters as the
/// leading columns, then `<planner>_median`, `<planner>_ci_lo`,
/// `<planner>_ci_hi` per planner, one row per cell.
pub fn emit_plot_data(summary: &[SummaryRow], format: PlotFormat, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let PlotFormat::Tsv = format;
    let mut files = Vec::new();
    let mut metrics: Vec<&str> = summary.iter().map(|r| r.metric.as_str()).collect();
    metrics.sort_unstable();
    metrics.dedup();
    for metric in metrics {
        if metric == "empty_cell" {
            continue;
        }
        let text = series_text(summary, metric);
        let path = out_dir.join(format!("series_{metric}.tsv"));
        std::fs::write(&path, text).map_err(|e| BenchError::io(&path, e))?;
        files.push(path);
    }
    Ok(files)
}

/// Renders one metric of the summary as a tab-separated table.
pub fn series_text(summary: &[SummaryRow], metric: &str) -> String {
    let rows: Vec<&SummaryRow> = summary.iter().filter(|r| r.metric == metric).collect();
    let Some(first) = rows.first() else {
        return String::new();
    };
    let mut planners: Vec<&str> = rows.iter().map(|r| r.planner.as_str()).collect();
    planners.sort_unstable();
    planners.dedup();
    let mut cells: Vec<&Vec<(String, String)>> = Vec::new();
    for r in &rows {
        if !cells.iter().any(|c| **c == r.cell) {
            cells.push(&r.cell);
        }
    }

    let mut out = String::new();
    let mut header: Vec<String> = first.cell.iter().map(|(k, _)| k.clone()).collect();
    for p in &planners {
        header.push(format!("{p}_median"));
        header.push(format!("{p}_ci_lo"));
        header.push(format!("{p}_ci_hi"));
    }
    let _ = writeln!(out, "{}", header.join("\t"));

    for cell in cells {
        let mut fields: Vec<String> = cell.iter().map(|(_, v)| v.clone()).collect();
        for p in &planners {
            match rows.iter().find(|r| &r.cell == cell && r.planner == *p) {
                Some(r) => {
                    fields.push(r.median.to_string());
                    fields.push(r.ci_lo.to_string());
                    fields.push(r.ci_hi.to_string());
                }
                None => {
                    fields.extend(["nan".into(), "nan".into(), "nan".into()]);
                }
            }
        }
        let _ = writeln!(out, "{}", fields.join("\t"));
    }
    out
}

/// Parses a series file back into (header, rows of fields); used by the
/// print-parse identity check and by downstream plotting scripts.
pub fn parse_series(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| BenchError::Parse("series file is empty".into()))?
        .split('\t')
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for line in lines {
        let fields: Vec<String> = line.split('\t').map(str::to_string).collect();
        if fields.len() != header.len() {
            return Err(BenchError::Parse(format!(
                "series row has {} fields, header has {}",
                fields.len(),
                header.len()
            )));
        }
        rows.push(fields);
    }
    Ok((header, rows))
}

/// Static SVG of a 2-d problem: bounds, obstacles, the planner tree, the
/// best path, and the informed-set ellipse for the final best cost (drawn
/// with transverse diameter equal to that cost).
pub fn render_run_svg(problem: &ProblemDef, result: Option<&PlanResult>) -> String {
    assert_eq!(problem.dim(), 2, "SVG rendering is 2-d only");
    let lo = problem.bounds_lo();
    let hi = problem.bounds_hi();
    let (w, h) = (hi[0] - lo[0], hi[1] - lo[1]);
    let margin = 0.03 * w.max(h);
    let stroke = 0.002 * w.max(h);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
        lo[0] - margin,
        -hi[1] - margin,
        w + 2.0 * margin,
        h + 2.0 * margin,
        (800.0 * (h + 2.0 * margin) / (w + 2.0 * margin)).round()
    );
    // World y grows upward; SVG y grows downward, so plot (x, -y).
    let _ = writeln!(
        out,
        r#"<rect x="{}" y="{}" width="{w}" height="{h}" fill="white" stroke="black" stroke-width="{stroke}"/>"#,
        lo[0], -hi[1]
    );
    for ob in problem.world().obstacles() {
        let _ = writeln!(
            out,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#b0b0b0"/>"##,
            ob.lo()[0],
            -ob.hi()[1],
            ob.hi()[0] - ob.lo()[0],
            ob.hi()[1] - ob.lo()[1]
        );
    }

    if let Some(result) = result {
        let tree = result.tree();
        let _ = writeln!(out, r##"<g stroke="#5b8dbf" stroke-width="{}" opacity="0.6">"##, stroke * 0.7);
        for i in 1..tree.len() {
            let id = informed_rrt::nn::VertexId(i as u32);
            let a = tree.state(id);
            let b = tree.state(tree.parent(id));
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                a[0], -a[1], b[0], -b[1]
            );
        }
        let _ = writeln!(out, "</g>");

        if let Ok(path) = informed_rrt::planner::extract_path(result) {
            let pts: Vec<String> =
                path.states().iter().map(|s| format!("{},{}", s[0], -s[1])).collect();
            let _ = writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="magenta" stroke-width="{}"/>"#,
                pts.join(" "),
                stroke * 3.0
            );
        }

        // Informed-set outline for the final best cost, clamped at the
        // focal distance exactly as the sampler clamps it (goal-ball
        // vertices can undercut c_min, degenerating the set to the segment).
        let c_best = result.best_cost().value().max(problem.c_min());
        if c_best.is_finite() {
            if let Ok(phs) =
                ProlateHyperspheroid::new(problem.x_start(), problem.x_goal(), c_best)
            {
                let c = phs.x_centre();
                let dx = problem.x_goal()[0] - problem.x_start()[0];
                let dy = problem.x_goal()[1] - problem.x_start()[1];
                // Negated angle in the flipped frame.
                let angle = -dy.atan2(dx).to_degrees();
                let _ = writeln!(
                    out,
                    r##"<ellipse cx="{}" cy="{}" rx="{}" ry="{}" transform="rotate({} {} {})" fill="none" stroke="#555555" stroke-width="{}" stroke-dasharray="{},{}"/>"##,
                    c[0],
                    -c[1],
                    phs.radii()[0],
                    phs.radii()[1],
                    angle,
                    c[0],
                    -c[1],
                    stroke,
                    stroke * 4.0,
                    stroke * 4.0
                );
            }
        }
    }

    let start = problem.x_start();
    let goal = problem.x_goal();
    let r_mark = 0.008 * w.max(h);
    let _ = writeln!(
        out,
        r#"<circle cx="{}" cy="{}" r="{r_mark}" fill="green"/>"#,
        start[0], -start[1]
    );
    let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{r_mark}" fill="red"/>"#, goal[0], -goal[1]);
    let _ = writeln!(
        out,
        r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="red" stroke-width="{stroke}"/>"#,
        goal[0],
        -goal[1],
        problem.r_goal()
    );
    out.push_str("</svg>\n");
    out
}
