//! Independent brute-force validators used by tests and benchmarks.
//!
//! Each oracle takes its own arithmetic route: Monte-Carlo rejection over a
//! bounding box instead of the closed-form hyperspheroid volume, dense point
//! sampling instead of the exact slab test, a grid Dijkstra instead of the
//! planner. Results are deterministic given a seed and report their own
//! statistical error where applicable.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use rand::Rng;

use crate::sampling::ProlateHyperspheroid;
use crate::types::{dist, heuristic_raw, Cost, ProblemDef, StateVec};
use crate::world::World;
use crate::{Error, Result};

/// Outcome of a chi-square uniformity test over equal-measure shells.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquareReport {
    pub bins: usize,
    pub statistic: f64,
    pub dof: usize,
    pub threshold: f64,
    pub pass: bool,
}

/// Monte-Carlo volume estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McVolumeEstimate {
    pub estimate: f64,
    pub std_error: f64,
    /// Fraction of box draws that landed inside the hyperspheroid.
    pub acceptance_fraction: f64,
    pub draws: u64,
}

/// Grid shortest-path cost together with the worst-case metrication bias of
/// the connectivity pattern (how much longer a grid path can be than the
/// Euclidean optimum it approximates).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridOptimum {
    pub cost: Cost,
    pub metrication_bias: f64,
    pub resolution: f64,
}

/// Monte-Carlo mean of the heuristic over hyperspheroid draws.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContractionEstimate {
    pub mean: f64,
    pub std_error: f64,
}

/// Rejection estimate of the hyperspheroid volume from its tight bounding
/// box (side `c_best` on the transverse axis, `sqrt(c_best^2 - c_min^2)`
/// on the others). Deliberately avoids the closed-form volume: membership
/// is decided by the two-focal-distance sum alone.
pub fn mc_volume_estimate<R: Rng + ?Sized>(
    c_best: f64,
    c_min: f64,
    n: usize,
    draws: u64,
    rng: &mut R,
) -> Result<McVolumeEstimate> {
    if draws < 10_000 {
        return Err(Error::InvalidInput(format!(
            "volume estimation needs at least 1e4 draws, got {draws}"
        )));
    }
    if n == 0 || c_best < c_min || c_min < 0.0 {
        return Err(Error::InvalidInput("need n >= 1 and c_best >= c_min >= 0".into()));
    }
    let transverse = c_best / 2.0;
    let conjugate = (c_best * c_best - c_min * c_min).max(0.0).sqrt() / 2.0;
    if conjugate == 0.0 && n > 1 {
        return Ok(McVolumeEstimate { estimate: 0.0, std_error: 0.0, acceptance_fraction: 0.0, draws });
    }

    let mut box_volume = 2.0 * transverse;
    for _ in 1..n {
        box_volume *= 2.0 * conjugate;
    }

    // Foci at -c_min/2 and +c_min/2 on the first axis of the aligned frame.
    let half = c_min / 2.0;
    let mut accepted = 0u64;
    let mut x = vec![0.0; n];
    for _ in 0..draws {
        x[0] = rng.random_range(-transverse..transverse);
        for xi in x.iter_mut().skip(1) {
            *xi = rng.random_range(-conjugate..conjugate);
        }
        let mut to_start = (x[0] + half) * (x[0] + half);
        let mut to_goal = (x[0] - half) * (x[0] - half);
        for &xi in &x[1..] {
            to_start += xi * xi;
            to_goal += xi * xi;
        }
        if to_start.sqrt() + to_goal.sqrt() <= c_best {
            accepted += 1;
        }
    }

    let p = accepted as f64 / draws as f64;
    Ok(McVolumeEstimate {
        estimate: box_volume * p,
        std_error: box_volume * (p * (1.0 - p) / draws as f64).sqrt(),
        acceptance_fraction: p,
        draws,
    })
}

/// Chi-square goodness-of-fit of samples against uniformity over the
/// hyperspheroid, binned into equal-measure concentric shells. The pass
/// threshold is the 0.999 quantile for `bins - 1` degrees of freedom, so a
/// correct sampler fails about once in a thousand runs.
pub fn chi_square_uniformity(
    samples: &[StateVec],
    phs: &ProlateHyperspheroid,
    bins: usize,
) -> Result<ChiSquareReport> {
    if bins < 2 {
        return Err(Error::InvalidInput("need at least two shells".into()));
    }
    if samples.len() < 50 * bins {
        return Err(Error::InvalidInput(format!(
            "need at least 50 samples per shell: {} samples for {bins} shells",
            samples.len()
        )));
    }
    let mut counts = vec![0u64; bins];
    for s in samples {
        let frac = phs.measure_fraction(s)?;
        let k = ((frac * bins as f64) as usize).min(bins - 1);
        counts[k] += 1;
    }
    let expected = samples.len() as f64 / bins as f64;
    let statistic: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let dof = bins - 1;
    let threshold = chi_square_quantile(dof as f64, 0.999);
    Ok(ChiSquareReport { bins, statistic, dof, threshold, pass: statistic < threshold })
}

/// Empirical mean of the heuristic over uniform hyperspheroid draws, the
/// Monte-Carlo counterpart of the closed-form expectation. Finite
/// differences of this mean near `c_best = c_min` realize the one-step
/// contraction rate.
pub fn one_step_contraction_estimate<R: Rng + ?Sized>(
    c_best: f64,
    c_min: f64,
    n: usize,
    draws: u64,
    rng: &mut R,
) -> Result<ContractionEstimate> {
    if !(c_min > 0.0) || c_best < c_min || n == 0 || draws == 0 {
        return Err(Error::InvalidInput("need c_best >= c_min > 0, n >= 1, draws >= 1".into()));
    }
    let mut start = vec![0.0; n];
    let mut goal = vec![0.0; n];
    start[0] = -c_min / 2.0;
    goal[0] = c_min / 2.0;
    let phs = ProlateHyperspheroid::new(
        &StateVec::new(start.clone())?,
        &StateVec::new(goal.clone())?,
        c_best,
    )?;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..draws {
        let x = phs.sample(rng);
        let f = heuristic_raw(x.coords(), &start, &goal);
        sum += f;
        sum_sq += f * f;
    }
    let mean = sum / draws as f64;
    let var = (sum_sq / draws as f64 - mean * mean).max(0.0);
    Ok(ContractionEstimate { mean, std_error: (var / draws as f64).sqrt() })
}

/// Worst-case ratio of grid path length to Euclidean length for the
/// all-neighbors connectivity in `n` dimensions, minus one.
pub fn grid_metrication_bias(n: usize) -> f64 {
    // Moving toward a direction with sorted components uses the step set
    // (1,..,1,0,..,0); the worst direction maximizes the weighted sum of
    // successive square-root gaps.
    let mut sum = 0.0;
    for k in 1..=n {
        let gap = (k as f64).sqrt() - ((k - 1) as f64).sqrt();
        sum += gap * gap;
    }
    sum.sqrt() - 1.0
}

/// Exact-arithmetic reference optimum on a lattice: Dijkstra over the
/// 8-connected (2-d) or 26-connected (3-d) grid of lattice points, with
/// every move collision-checked by the exact segment test. The result
/// upper-bounds the continuous optimum between the snapped endpoints;
/// the over-estimate is at most [`grid_metrication_bias`] plus the
/// endpoint snapping slop (half a cell diagonal at each end).
pub fn grid_dijkstra_optimum(problem: &ProblemDef, resolution: f64) -> Result<GridOptimum> {
    let n = problem.dim();
    if n > 3 {
        return Err(Error::Unsupported(format!(
            "grid reference optima are limited to 3 dimensions, got {n}"
        )));
    }
    if !(resolution > 0.0) {
        return Err(Error::InvalidInput("resolution must be positive".into()));
    }
    let world = problem.world();
    let lo = world.bounds_lo();
    let hi = world.bounds_hi();

    let mut shape = vec![0usize; n];
    for i in 0..n {
        let steps = (hi[i] - lo[i]) / resolution;
        let rounded = steps.round();
        if (steps - rounded).abs() > 1e-6 {
            return Err(Error::InvalidInput(format!(
                "resolution {resolution} does not divide the bounds span {}",
                hi[i] - lo[i]
            )));
        }
        shape[i] = rounded as usize + 1;
    }
    let total: usize = shape.iter().product();

    let point_of = |idx: usize| -> Vec<f64> {
        let mut rem = idx;
        let mut p = vec![0.0; n];
        for i in 0..n {
            p[i] = lo[i] + (rem % shape[i]) as f64 * resolution;
            rem /= shape[i];
        }
        p
    };

    let mut free = vec![false; total];
    let mut buf = vec![0.0; n];
    for (idx, f) in free.iter_mut().enumerate() {
        let mut rem = idx;
        for i in 0..n {
            buf[i] = lo[i] + (rem % shape[i]) as f64 * resolution;
            rem /= shape[i];
        }
        *f = world.state_free_unchecked(&buf);
    }

    let snap = |x: &[f64]| -> Option<usize> {
        // Nearest free lattice point among the cells around x.
        let mut best: Option<(f64, usize)> = None;
        let offsets = vec![-1i64..=1i64; n];
        let mut cursor = vec![-1i64; n];
        loop {
            let mut idx = 0usize;
            let mut stride = 1usize;
            let mut ok = true;
            for i in 0..n {
                let c = ((x[i] - lo[i]) / resolution).round() as i64 + cursor[i];
                if c < 0 || c as usize >= shape[i] {
                    ok = false;
                    break;
                }
                idx += c as usize * stride;
                stride *= shape[i];
            }
            if ok && free[idx] {
                let p = point_of(idx);
                let d = dist(&p, x);
                if best.map_or(true, |(bd, _)| d < bd) {
                    best = Some((d, idx));
                }
            }
            // Advance the odometer over the offset cube.
            let mut i = 0;
            loop {
                if i == n {
                    return best.map(|(_, idx)| idx);
                }
                if cursor[i] < *offsets[i].end() {
                    cursor[i] += 1;
                    break;
                }
                cursor[i] = *offsets[i].start();
                i += 1;
            }
        }
    };

    let (Some(src), Some(dst)) = (snap(problem.x_start().coords()), snap(problem.x_goal().coords()))
    else {
        return Ok(GridOptimum {
            cost: Cost::INFINITY,
            metrication_bias: grid_metrication_bias(n),
            resolution,
        });
    };

    // Neighbor offsets: every nonzero vector in {-1,0,1}^n.
    let mut moves: Vec<(Vec<i64>, f64)> = Vec::new();
    let mut cur = vec![-1i64; n];
    loop {
        if cur.iter().any(|&c| c != 0) {
            let len = (cur.iter().map(|&c| (c * c) as f64).sum::<f64>()).sqrt() * resolution;
            moves.push((cur.clone(), len));
        }
        let mut i = 0;
        loop {
            if i == n {
                break;
            }
            if cur[i] < 1 {
                cur[i] += 1;
                break;
            }
            cur[i] = -1;
            i += 1;
        }
        if i == n {
            break;
        }
    }

    #[derive(PartialEq)]
    struct Entry(f64, usize);
    impl Eq for Entry {}
    impl PartialOrd for Entry {
        fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Entry {
        fn cmp(&self, other: &Self) -> core::cmp::Ordering {
            // Reversed, so the heap pops the smallest distance first.
            other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
        }
    }

    let mut dist_to = vec![f64::INFINITY; total];
    dist_to[src] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(Entry(0.0, src));
    while let Some(Entry(d, u)) = heap.pop() {
        if d > dist_to[u] {
            continue;
        }
        if u == dst {
            break;
        }
        let pu = point_of(u);
        'moves: for (off, len) in &moves {
            let mut v = 0usize;
            let mut stride = 1usize;
            let mut rem = u;
            for i in 0..n {
                let c = (rem % shape[i]) as i64 + off[i];
                rem /= shape[i];
                if c < 0 || c as usize >= shape[i] {
                    continue 'moves;
                }
                v += c as usize * stride;
                stride *= shape[i];
            }
            if !free[v] {
                continue;
            }
            let nd = d + len;
            if nd < dist_to[v] {
                let pv = point_of(v);
                if world.segment_free_unchecked(&pu, &pv) {
                    dist_to[v] = nd;
                    heap.push(Entry(nd, v));
                }
            }
        }
    }

    let cost = if dist_to[dst].is_finite() {
        Cost::new(dist_to[dst])?
    } else {
        Cost::INFINITY
    };
    Ok(GridOptimum { cost, metrication_bias: grid_metrication_bias(n), resolution })
}

/// Dense point-sampling collision oracle: checks `points` evenly spaced
/// states along the closed segment (endpoints included). Compared against
/// the exact slab test; it can miss thin slivers between sample points,
/// which the comparison resolves with [`dense_segment_clearance`].
pub fn dense_segment_check(world: &World, a: &[f64], b: &[f64], points: usize) -> bool {
    debug_assert!(points >= 2);
    let n = a.len();
    let mut p = vec![0.0; n];
    for k in 0..points {
        let t = k as f64 / (points - 1) as f64;
        for i in 0..n {
            p[i] = a[i] + t * (b[i] - a[i]);
        }
        if !world.state_free_unchecked(&p) {
            return false;
        }
    }
    true
}

/// Minimum sampled distance from the segment to any obstacle (0 inside one).
pub fn dense_segment_clearance(world: &World, a: &[f64], b: &[f64], points: usize) -> f64 {
    let n = a.len();
    let mut p = vec![0.0; n];
    let mut min_d = f64::INFINITY;
    for k in 0..points {
        let t = k as f64 / (points - 1) as f64;
        for i in 0..n {
            p[i] = a[i] + t * (b[i] - a[i]);
        }
        for ob in world.obstacles() {
            min_d = min_d.min(ob.distance_to(&p));
        }
    }
    min_d
}

/// Natural log of the gamma function (Lanczos, g = 7, 9 terms); positive
/// arguments only, which covers every half-integer used here.
fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 8] = [
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    debug_assert!(x > 0.0);
    let x = x - 1.0;
    let mut acc = 0.99999999999980993;
    for (i, c) in COEFFS.iter().enumerate() {
        acc += c / (x + i as f64 + 1.0);
    }
    let t = x + 7.5;
    0.5 * (2.0 * core::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized lower incomplete gamma P(a, x), by series for small x and by
/// continued fraction otherwise.
fn reg_lower_gamma(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let log_prefix = a * x.ln() - x - ln_gamma(a);
    if x < a + 1.0 {
        // Series expansion.
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut k = a;
        for _ in 0..500 {
            k += 1.0;
            term *= x / k;
            sum += term;
            if term.abs() < sum.abs() * 1e-16 {
                break;
            }
        }
        sum * log_prefix.exp()
    } else {
        // Lentz continued fraction for the upper tail Q.
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        1.0 - log_prefix.exp() * h
    }
}

/// Quantile of the chi-square distribution with `dof` degrees of freedom,
/// by bisection on the regularized incomplete gamma CDF.
pub fn chi_square_quantile(dof: f64, p: f64) -> f64 {
    debug_assert!(dof > 0.0 && p > 0.0 && p < 1.0);
    let cdf = |x: f64| reg_lower_gamma(dof / 2.0, x / 2.0);
    let mut hi = dof.max(1.0);
    while cdf(hi) < p {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
