//! Direct uniform sampling of the informed subset, plus its closed-form
//! measures and convergence quantities.
//!
//! For a path-length problem with start and goal foci and a current best
//! solution cost `c_best`, the states that could still improve the solution
//! form a prolate hyperspheroid: transverse diameter `c_best` along the
//! start-goal axis, conjugate diameters `sqrt(c_best^2 - c_min^2)`. A uniform
//! sample of that set is produced without rejection by stretching a uniform
//! unit-ball draw with the radii, rotating it into the world frame, and
//! translating it to the centre:
//!
//! ```text
//! x = C * L * x_ball + x_centre
//! ```
//!
//! `L` is the diagonal radii matrix and `C` the rotation taking the first
//! canonical axis onto the transverse axis. The alternative, rejecting draws
//! from the tight bounding box, accepts with probability `zeta_n / 2^n`
//! (about 8% at n = 6), which is why the direct transform matters.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::types::{check_dims, dist, Cost, ProblemDef, StateVec};
use crate::{Error, Result};

/// Relative slack under which a transverse diameter marginally below the
/// focal distance is clamped up instead of rejected. Roundoff at
/// near-optimal convergence must not kill a run.
const DIAMETER_CLAMP_REL: f64 = 1e-9;

/// Bail out of bounds-rejection resampling after this many misses.
const MAX_REJECTIONS: u64 = 1_000_000;

/// A rotation `C` in SO(n), stored row-major.
///
/// Constructed so that `C * e1` is the unit transverse axis; columns are
/// orthonormal and `det C = +1`, each to 1e-10 or better.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl RotationMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// `out = C * x`.
    pub(crate) fn apply(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(out.len(), self.n);
        for i in 0..self.n {
            let row = &self.entries[i * self.n..(i + 1) * self.n];
            out[i] = row.iter().zip(x).map(|(c, v)| c * v).sum();
        }
    }

    /// `out = C^T * x`; the inverse rotation.
    pub(crate) fn apply_transpose(&self, x: &[f64], out: &mut [f64]) {
        for j in 0..self.n {
            out[j] = (0..self.n).map(|i| self.entries[i * self.n + j] * x[i]).sum();
        }
    }
}

/// Rotation from the hyperspheroid-aligned frame to the world frame.
///
/// The first column is the unit transverse axis `a1 = (x_goal - x_start) /
/// ||x_goal - x_start||`. The remaining columns complete an orthonormal
/// basis deterministically: canonical basis vectors, skipping the one most
/// parallel to `a1`, are orthogonalized in ascending index order. A final
/// sign flip of the last column enforces `det C = +1`, which is the
/// det-correction term of the underlying Wahba-problem solution with the
/// right-singular basis fixed to the identity.
pub fn rotation_to_world_frame(x_start: &StateVec, x_goal: &StateVec) -> Result<RotationMatrix> {
    check_dims(x_start.dim(), x_goal.dim())?;
    let n = x_start.dim();
    let norm = dist(x_start.coords(), x_goal.coords());
    if norm <= 0.0 {
        return Err(Error::DegenerateGeometry(
            "coincident foci admit no transverse axis".into(),
        ));
    }
    if n == 1 {
        // SO(1) = {+1}; a 1-d hyperspheroid is an interval symmetric about
        // its centre, so the orientation is immaterial.
        return Ok(RotationMatrix { n: 1, entries: vec![1.0] });
    }

    let a1: Vec<f64> = x_goal
        .coords()
        .iter()
        .zip(x_start.coords())
        .map(|(g, s)| (g - s) / norm)
        .collect();

    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    cols.push(a1.clone());

    let skip = a1
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.abs().total_cmp(&b.abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);

    for k in 0..n {
        if k == skip {
            continue;
        }
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        // Two Gram-Schmidt passes keep orthonormality near machine precision.
        for _ in 0..2 {
            for c in &cols {
                let proj: f64 = v.iter().zip(c).map(|(a, b)| a * b).sum();
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= proj * ci;
                }
            }
        }
        let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for vi in &mut v {
            *vi /= vnorm;
        }
        cols.push(v);
    }

    let mut entries = vec![0.0; n * n];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            entries[i * n + j] = col[i];
        }
    }
    if determinant(n, &entries) < 0.0 {
        for i in 0..n {
            entries[i * n + (n - 1)] = -entries[i * n + (n - 1)];
        }
    }
    Ok(RotationMatrix { n, entries })
}

/// Determinant by LU decomposition with partial pivoting. Matrices here are
/// tiny (the state dimension), so no care beyond pivoting is needed.
fn determinant(n: usize, row_major: &[f64]) -> f64 {
    let mut m = row_major.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a * n + col].abs().total_cmp(&m[b * n + col].abs()))
            .unwrap();
        if m[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..n {
                m.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        det *= m[col * n + col];
        for row in col + 1..n {
            let f = m[row * n + col] / m[col * n + col];
            for j in col..n {
                m[row * n + j] -= f * m[col * n + j];
            }
        }
    }
    det
}

/// The informed subset for a path-length problem: a prolate hyperspheroid
/// with the start and goal as foci and transverse diameter `c_best`.
///
/// The rotation and centre depend only on the foci and are computed once;
/// only the radii change as the solution improves.
#[derive(Clone, Debug)]
pub struct ProlateHyperspheroid {
    x_start_focus: Vec<f64>,
    x_goal_focus: Vec<f64>,
    c_min: f64,
    c_best: f64,
    x_centre: Vec<f64>,
    rotation: RotationMatrix,
    radii: Vec<f64>,
}

impl ProlateHyperspheroid {
    /// Builds the hyperspheroid for the given foci and transverse diameter.
    ///
    /// `c_best` marginally below the focal distance (within `1e-9 * c_min`)
    /// is clamped up to it; anything lower is rejected as infeasible.
    pub fn new(x_start: &StateVec, x_goal: &StateVec, c_best: f64) -> Result<Self> {
        let rotation = rotation_to_world_frame(x_start, x_goal)?;
        Self::with_rotation(x_start, x_goal, c_best, rotation)
    }

    /// Rebuilds with a smaller (or larger) transverse diameter, reusing the
    /// cached rotation and centre.
    pub fn with_transverse_diameter(&self, c_best: f64) -> Result<Self> {
        let mut phs = self.clone();
        phs.c_best = clamp_diameter(c_best, self.c_min)?;
        phs.radii = radii(phs.c_best, phs.c_min, phs.dim());
        Ok(phs)
    }

    fn with_rotation(
        x_start: &StateVec,
        x_goal: &StateVec,
        c_best: f64,
        rotation: RotationMatrix,
    ) -> Result<Self> {
        let c_min = dist(x_start.coords(), x_goal.coords());
        let c_best = clamp_diameter(c_best, c_min)?;
        let x_centre: Vec<f64> = x_start
            .coords()
            .iter()
            .zip(x_goal.coords())
            .map(|(s, g)| (s + g) / 2.0)
            .collect();
        Ok(Self {
            x_start_focus: x_start.coords().to_vec(),
            x_goal_focus: x_goal.coords().to_vec(),
            c_min,
            c_best,
            x_centre,
            rotation,
            radii: radii(c_best, c_min, x_start.dim()),
        })
    }

    pub fn dim(&self) -> usize {
        self.x_centre.len()
    }

    pub fn c_min(&self) -> f64 {
        self.c_min
    }

    pub fn c_best(&self) -> f64 {
        self.c_best
    }

    pub fn x_centre(&self) -> &[f64] {
        &self.x_centre
    }

    pub fn x_start_focus(&self) -> &[f64] {
        &self.x_start_focus
    }

    pub fn x_goal_focus(&self) -> &[f64] {
        &self.x_goal_focus
    }

    pub fn rotation(&self) -> &RotationMatrix {
        &self.rotation
    }

    /// Transverse radius first, then the equal conjugate radii.
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// One uniform draw from the hyperspheroid volume.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> StateVec {
        let n = self.dim();
        let mut ball = vec![0.0; n];
        let mut out = vec![0.0; n];
        self.sample_into(rng, &mut ball, &mut out);
        StateVec::new(out).expect("hyperspheroid samples are finite")
    }

    /// Allocation-free draw for hot loops; `ball` and `out` are scratch.
    pub(crate) fn sample_into<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        ball: &mut [f64],
        out: &mut [f64],
    ) {
        unit_ball_into(rng, ball);
        for (b, r) in ball.iter_mut().zip(&self.radii) {
            *b *= r;
        }
        self.rotation.apply(ball, out);
        for (o, c) in out.iter_mut().zip(&self.x_centre) {
            *o += c;
        }
    }

    /// Fraction of the hyperspheroid measure enclosed by the concentric
    /// hyperspheroid through `x`; 0 at the centre, 1 on the boundary.
    /// Used by the uniformity oracle to bin samples into equal-measure shells.
    pub fn measure_fraction(&self, x: &StateVec) -> Result<f64> {
        check_dims(self.dim(), x.dim())?;
        if self.radii.iter().any(|&r| r <= 0.0) {
            return Err(Error::DegenerateGeometry(
                "degenerate hyperspheroid has zero-measure shells".into(),
            ));
        }
        let n = self.dim();
        let mut delta = vec![0.0; n];
        for ((d, xi), c) in delta.iter_mut().zip(x.coords()).zip(&self.x_centre) {
            *d = xi - c;
        }
        let mut local = vec![0.0; n];
        self.rotation.apply_transpose(&delta, &mut local);
        let rho2: f64 = local.iter().zip(&self.radii).map(|(v, r)| (v / r) * (v / r)).sum();
        Ok(rho2.sqrt().min(1.0).powi(n as i32))
    }
}

fn clamp_diameter(c_best: f64, c_min: f64) -> Result<f64> {
    if !c_best.is_finite() {
        return Err(Error::InvalidInput(format!(
            "transverse diameter must be finite, got {c_best}"
        )));
    }
    if c_best >= c_min {
        Ok(c_best)
    } else if c_best >= c_min - DIAMETER_CLAMP_REL * c_min {
        Ok(c_min)
    } else {
        Err(Error::InfeasibleCost { c_best, c_min })
    }
}

fn radii(c_best: f64, c_min: f64, n: usize) -> Vec<f64> {
    let conjugate = (c_best * c_best - c_min * c_min).max(0.0).sqrt() / 2.0;
    let mut r = vec![conjugate; n];
    r[0] = c_best / 2.0;
    r
}

/// Uniform sample from the volume of the unit n-ball.
///
/// n independent standard Gaussians are normalized onto the sphere and the
/// radius is corrected by `u^(1/n)`. This stays exact in any dimension,
/// unlike rejection from the enclosing cube whose acceptance decays as
/// `zeta_n / 2^n`.
pub fn sample_unit_n_ball<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<StateVec> {
    if n == 0 {
        return Err(Error::InvalidInput("ball dimension must be >= 1".into()));
    }
    let mut out = vec![0.0; n];
    unit_ball_into(rng, &mut out);
    StateVec::new(out)
}

pub(crate) fn unit_ball_into<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    let n = out.len();
    loop {
        for o in out.iter_mut() {
            *o = rng.sample(StandardNormal);
        }
        let norm = out.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            let u: f64 = rng.random();
            let scale = u.powf(1.0 / n as f64) / norm;
            for o in out.iter_mut() {
                *o *= scale;
            }
            return;
        }
        // All-zero Gaussian vector; resample.
    }
}

/// Sampler for one planning problem: uniform over the bounds box while no
/// solution exists, uniform over the informed subset intersected with the
/// bounds once `c_max` is finite.
///
/// The rotation and centre are computed once here and reused for every draw.
/// Draws landing outside the bounds are rejected and redrawn (never clamped,
/// which would pile density onto the boundary); pathological geometries give
/// up after a budget of misses.
#[derive(Clone, Debug)]
pub struct InformedSampler {
    phs: ProlateHyperspheroid,
    bounds_lo: Vec<f64>,
    bounds_hi: Vec<f64>,
}

impl InformedSampler {
    pub fn new(problem: &ProblemDef) -> Result<Self> {
        let phs = ProlateHyperspheroid::new(problem.x_start(), problem.x_goal(), problem.c_min())?;
        Ok(Self {
            phs,
            bounds_lo: problem.bounds_lo().to_vec(),
            bounds_hi: problem.bounds_hi().to_vec(),
        })
    }

    /// Straight-line start-goal distance of the underlying problem.
    pub fn c_min(&self) -> f64 {
        self.phs.c_min()
    }

    /// The informed subset for diameter `c_best`, with cached rotation.
    pub fn hyperspheroid(&self, c_best: f64) -> Result<ProlateHyperspheroid> {
        self.phs.with_transverse_diameter(c_best)
    }

    /// One draw; see the type docs for the two regimes.
    pub fn sample<R: Rng + ?Sized>(&self, c_max: Cost, rng: &mut R) -> Result<StateVec> {
        let n = self.bounds_lo.len();
        let mut out = vec![0.0; n];
        let mut ball = vec![0.0; n];
        self.sample_into(c_max, rng, &mut ball, &mut out)?;
        StateVec::new(out)
    }

    pub(crate) fn sample_into<R: Rng + ?Sized>(
        &self,
        c_max: Cost,
        rng: &mut R,
        ball: &mut [f64],
        out: &mut [f64],
    ) -> Result<()> {
        if !c_max.is_finite() {
            for ((o, lo), hi) in out.iter_mut().zip(&self.bounds_lo).zip(&self.bounds_hi) {
                *o = rng.random_range(*lo..*hi);
            }
            return Ok(());
        }
        let phs = self.phs.with_transverse_diameter(c_max.value())?;
        for _ in 0..MAX_REJECTIONS {
            phs.sample_into(rng, ball, out);
            if self.in_bounds(out) {
                return Ok(());
            }
        }
        Err(Error::SamplingStalled { attempts: MAX_REJECTIONS })
    }

    fn in_bounds(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(&self.bounds_lo)
            .zip(&self.bounds_hi)
            .all(|((v, lo), hi)| *v >= *lo && *v <= *hi)
    }
}

/// One-shot draw for a problem; builds the sampler afresh. Planners should
/// hold an [`InformedSampler`] instead so the rotation is computed once.
pub fn sample<R: Rng + ?Sized>(problem: &ProblemDef, c_max: Cost, rng: &mut R) -> Result<StateVec> {
    InformedSampler::new(problem)?.sample(c_max, rng)
}

/// Lebesgue measure of the unit n-ball, via the two-step recurrence
/// `zeta_n = 2 pi / n * zeta_{n-2}` with `zeta_0 = 1`, `zeta_1 = 2`.
pub fn unit_ball_measure(n: usize) -> f64 {
    let mut k = n % 2;
    let mut z = if k == 0 { 1.0 } else { 2.0 };
    while k < n {
        k += 2;
        z *= 2.0 * core::f64::consts::PI / k as f64;
    }
    z
}

/// Lebesgue measure of the prolate hyperspheroid with transverse diameter
/// `c_best` and focal distance `c_min`:
/// `c_best * (c_best^2 - c_min^2)^((n-1)/2) * zeta_n / 2^n`.
pub fn phs_measure(c_best: f64, c_min: f64, n: usize) -> Result<f64> {
    if c_best < c_min {
        return Err(Error::InfeasibleCost { c_best, c_min });
    }
    let conj_sq = (c_best * c_best - c_min * c_min).max(0.0);
    let volume = c_best * conj_sq.powf((n as f64 - 1.0) / 2.0) * unit_ball_measure(n)
        / 2f64.powi(n as i32);
    Ok(volume)
}

/// Upper bound on the probability that one uniform draw from a sampling
/// region of the given measure improves the solution: the measure ratio of
/// the informed subset to the sampling region, capped at 1.
pub fn improvement_probability_bound(
    c_best: f64,
    c_min: f64,
    n: usize,
    sample_measure: f64,
) -> Result<f64> {
    if !(sample_measure > 0.0) {
        return Err(Error::InvalidInput(format!(
            "sampling-region measure must be positive, got {sample_measure}"
        )));
    }
    Ok((phs_measure(c_best, c_min, n)? / sample_measure).min(1.0))
}

/// Expected heuristic value of a uniform draw from the informed subset:
/// `(n c_best^2 + c_min^2) / ((n + 1) c_best)`. Always within
/// `[c_min, c_best]`.
pub fn expected_heuristic(c_best: f64, c_min: f64, n: usize) -> Result<f64> {
    if !(c_min > 0.0) || c_best < c_min {
        return Err(Error::InvalidInput(format!(
            "need c_best >= c_min > 0, got c_best={c_best}, c_min={c_min}"
        )));
    }
    Ok(expected_heuristic_raw(c_best, c_min, n))
}

/// The same closed form without the domain guard, for derivative probes at
/// the `c_best = c_min` boundary.
pub fn expected_heuristic_raw(c_best: f64, c_min: f64, n: usize) -> f64 {
    (n as f64 * c_best * c_best + c_min * c_min) / ((n as f64 + 1.0) * c_best)
}

/// Linear convergence rate of the solution cost under obstacle-free informed
/// sampling: `(n - 1) / (n + 1)`, a function of the state dimension alone.
pub fn convergence_rate(n: usize) -> f64 {
    (n as f64 - 1.0) / (n as f64 + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::heuristic_cost_through;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(coords: &[f64]) -> StateVec {
        StateVec::new(coords.to_vec()).unwrap()
    }

    fn check_rotation_contract(c: &RotationMatrix, x_start: &StateVec, x_goal: &StateVec) {
        let n = c.dim();
        // C^T C = I
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|k| c.entry(k, i) * c.entry(k, j)).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(dot, expect, epsilon = 1e-10);
            }
        }
        // det C = +1
        assert_abs_diff_eq!(determinant(n, &c.entries), 1.0, epsilon = 1e-10);
        // C e1 = a1
        let d = x_start.distance(x_goal);
        for i in 0..n {
            let a1 = (x_goal[i] - x_start[i]) / d;
            assert_abs_diff_eq!(c.entry(i, 0), a1, epsilon = 1e-10);
        }
    }

    #[test]
    fn rotation_axis_aligned_is_identity() {
        let c = rotation_to_world_frame(&s(&[0.0, 0.0]), &s(&[1.0, 0.0])).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(c.entry(i, j), expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn rotation_quarter_turn() {
        let (a, b) = (s(&[0.0, 0.0]), s(&[0.0, 2.0]));
        let c = rotation_to_world_frame(&a, &b).unwrap();
        // Columns forced to (0,1) and (-1,0) by the det correction.
        assert_abs_diff_eq!(c.entry(0, 0), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.entry(1, 0), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.entry(0, 1), -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.entry(1, 1), 0.0, epsilon = 1e-12);
        check_rotation_contract(&c, &a, &b);
    }

    #[test]
    fn rotation_3d_axis() {
        let (a, b) = (s(&[1.0, 1.0, 1.0]), s(&[1.0, 1.0, 3.0]));
        let c = rotation_to_world_frame(&a, &b).unwrap();
        assert_abs_diff_eq!(c.entry(0, 0), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.entry(1, 0), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.entry(2, 0), 1.0, epsilon = 1e-12);
        check_rotation_contract(&c, &a, &b);
    }

    #[test]
    fn rotation_random_foci_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=8 {
            for _ in 0..50 {
                let a = s(&(0..n).map(|_| rng.random_range(-10.0..10.0)).collect::<Vec<_>>());
                let b = s(&(0..n).map(|_| rng.random_range(-10.0..10.0)).collect::<Vec<_>>());
                if a.distance(&b) < 1e-6 {
                    continue;
                }
                let c = rotation_to_world_frame(&a, &b).unwrap();
                check_rotation_contract(&c, &a, &b);
            }
        }
    }

    #[test]
    fn rotation_rejects_coincident_foci() {
        let err = rotation_to_world_frame(&s(&[1.0, 2.0]), &s(&[1.0, 2.0])).unwrap_err();
        assert!(matches!(err, Error::DegenerateGeometry(_)));
    }

    #[test]
    fn phs_radii_from_diameters() {
        let phs = ProlateHyperspheroid::new(&s(&[0.0, 0.0]), &s(&[1.0, 0.0]), 2.0).unwrap();
        assert_relative_eq!(phs.radii()[0], 1.0);
        assert_relative_eq!(phs.radii()[1], 3f64.sqrt() / 2.0);
        assert_relative_eq!(phs.x_centre()[0], 0.5);
        assert_relative_eq!(phs.x_centre()[1], 0.0);
    }

    #[test]
    fn phs_degenerate_radii() {
        let phs = ProlateHyperspheroid::new(&s(&[0.0, 0.0]), &s(&[1.0, 0.0]), 1.0).unwrap();
        assert_relative_eq!(phs.radii()[0], 0.5);
        assert_relative_eq!(phs.radii()[1], 0.0);
    }

    #[test]
    fn phs_clamps_roundoff_below_c_min() {
        let phs = ProlateHyperspheroid::new(&s(&[0.0, 0.0]), &s(&[1.0, 0.0]), 1.0 - 1e-14).unwrap();
        assert_relative_eq!(phs.c_best(), 1.0);
        let err = ProlateHyperspheroid::new(&s(&[0.0, 0.0]), &s(&[1.0, 0.0]), 0.9).unwrap_err();
        assert!(matches!(err, Error::InfeasibleCost { .. }));
    }

    #[test]
    fn degenerate_phs_samples_lie_on_focal_segment() {
        let (a, b) = (s(&[0.0, 0.0]), s(&[1.0, 1.0]));
        let phs = ProlateHyperspheroid::new(&a, &b, a.distance(&b)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let x = phs.sample(&mut rng);
            let f = heuristic_cost_through(&x, &a, &b).unwrap().value();
            assert!(f <= phs.c_best() + 1e-9);
            // On the segment the two coordinates agree.
            assert_abs_diff_eq!(x[0], x[1], epsilon = 1e-9);
        }
    }

    #[test]
    fn phs_samples_contained() {
        let (a, b) = (s(&[-0.5, 0.0]), s(&[0.5, 0.0]));
        let phs = ProlateHyperspheroid::new(&a, &b, 2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let x = phs.sample(&mut rng);
            let f = heuristic_cost_through(&x, &a, &b).unwrap().value();
            assert!(f <= 2.0 + 1e-9, "f-hat {f} exceeds the transverse diameter");
        }
    }

    #[test]
    fn unit_ball_contained_and_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [1usize, 2, 3, 6] {
            let draws = 100_000;
            let mut mean = vec![0.0; n];
            let mut mean_norm_pow = 0.0;
            for _ in 0..draws {
                let x = sample_unit_n_ball(&mut rng, n).unwrap();
                let norm2: f64 = x.coords().iter().map(|v| v * v).sum();
                assert!(norm2 <= 1.0 + 1e-12);
                for (m, v) in mean.iter_mut().zip(x.coords()) {
                    *m += v;
                }
                mean_norm_pow += norm2.sqrt().powi(n as i32);
            }
            for m in mean {
                assert_abs_diff_eq!(m / draws as f64, 0.0, epsilon = 0.01);
            }
            // ||x||^n is uniform on [0,1], so its mean is 1/2.
            assert_abs_diff_eq!(mean_norm_pow / draws as f64, 0.5, epsilon = 0.01);
        }
    }

    #[test]
    fn unit_ball_rejects_dimension_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(sample_unit_n_ball(&mut rng, 0).is_err());
    }

    #[test]
    fn sampler_uniform_regime_stays_in_bounds() {
        let world = crate::world::World::new(s(&[-2.0, -3.0]), s(&[5.0, 7.0]), vec![]).unwrap();
        let problem = ProblemDef::new(world, s(&[0.0, 0.0]), s(&[1.0, 0.0]), 0.1).unwrap();
        let sampler = InformedSampler::new(&problem).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5_000 {
            let x = sampler.sample(Cost::INFINITY, &mut rng).unwrap();
            assert!(x[0] >= -2.0 && x[0] <= 5.0 && x[1] >= -3.0 && x[1] <= 7.0);
        }
    }

    #[test]
    fn sampler_informed_regime_contained_in_subset_and_bounds() {
        let world = crate::world::World::new(s(&[-20.0, -20.0]), s(&[20.0, 20.0]), vec![]).unwrap();
        let (a, b) = (s(&[-0.5, 0.0]), s(&[0.5, 0.0]));
        let problem = ProblemDef::new(world, a.clone(), b.clone(), 0.01).unwrap();
        let sampler = InformedSampler::new(&problem).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5_000 {
            let x = sampler.sample(Cost::new(2.0).unwrap(), &mut rng).unwrap();
            let f = heuristic_cost_through(&x, &a, &b).unwrap().value();
            assert!(f <= 2.0 + 1e-9);
        }
    }

    #[test]
    fn sampler_degenerate_diameter_yields_focal_segment() {
        let world = crate::world::World::new(s(&[-20.0, -20.0]), s(&[20.0, 20.0]), vec![]).unwrap();
        let (a, b) = (s(&[-0.5, 0.0]), s(&[0.5, 0.0]));
        let problem = ProblemDef::new(world, a, b, 0.01).unwrap();
        let sampler = InformedSampler::new(&problem).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let x = sampler.sample(Cost::new(1.0).unwrap(), &mut rng).unwrap();
        assert_abs_diff_eq!(x[1], 0.0, epsilon = 1e-9);
        assert!(x[0] >= -0.5 - 1e-9 && x[0] <= 0.5 + 1e-9);
    }

    #[test]
    fn identical_seeds_replay_identical_streams() {
        let (a, b) = (s(&[0.0, 0.0, 0.0]), s(&[1.0, 2.0, 3.0]));
        let phs = ProlateHyperspheroid::new(&a, &b, 5.0).unwrap();
        let mut r1 = ChaCha8Rng::seed_from_u64(99);
        let mut r2 = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..100 {
            let x = phs.sample(&mut r1);
            let y = phs.sample(&mut r2);
            assert_eq!(x, y);
        }
    }

    #[test]
    fn unit_ball_measures_match_closed_forms() {
        use core::f64::consts::PI;
        assert_relative_eq!(unit_ball_measure(1), 2.0);
        assert_relative_eq!(unit_ball_measure(2), PI);
        assert_relative_eq!(unit_ball_measure(3), 4.0 * PI / 3.0);
        assert_relative_eq!(unit_ball_measure(6), PI.powi(3) / 6.0, max_relative = 1e-14);
        assert_relative_eq!(unit_ball_measure(6), 5.16771, max_relative = 1e-5);
    }

    #[test]
    fn phs_measure_special_cases() {
        use core::f64::consts::PI;
        // Sphere special case: c_min = 0 gives a ball of diameter c_best.
        assert_relative_eq!(phs_measure(2.0, 0.0, 2).unwrap(), PI, max_relative = 1e-14);
        assert_relative_eq!(phs_measure(2.0, 2.0, 2).unwrap(), 0.0);
        // n=3, c_best=2, c_min=1: 2 * 3 * (4 pi / 3) / 8 = pi.
        assert_relative_eq!(phs_measure(2.0, 1.0, 3).unwrap(), PI, max_relative = 1e-14);
        assert!(matches!(phs_measure(1.0, 2.0, 3), Err(Error::InfeasibleCost { .. })));
    }

    #[test]
    fn tight_box_acceptance_ratio_is_dimension_only() {
        // Ratio of the hyperspheroid to its tight bounding box collapses to
        // zeta_n / 2^n regardless of the diameters.
        let (c_best, c_min): (f64, f64) = (2.0, 1.0);
        let conj_diam = (c_best * c_best - c_min * c_min).sqrt();
        let rect = c_best * conj_diam.powi(5);
        let p = improvement_probability_bound(c_best, c_min, 6, rect).unwrap();
        assert_relative_eq!(p, unit_ball_measure(6) / 64.0, max_relative = 1e-12);
        assert_abs_diff_eq!(p, 0.0807, epsilon = 5e-5);
    }

    #[test]
    fn improvement_bound_zero_at_optimum_and_capped() {
        assert_relative_eq!(improvement_probability_bound(2.0, 2.0, 2, 100.0).unwrap(), 0.0);
        assert_relative_eq!(improvement_probability_bound(100.0, 1.0, 2, 1.0).unwrap(), 1.0);
        assert!(improvement_probability_bound(2.0, 1.0, 2, 0.0).is_err());
    }

    #[test]
    fn expected_heuristic_plug_ins() {
        assert_relative_eq!(expected_heuristic(2.0, 1.0, 2).unwrap(), 1.5);
        assert_relative_eq!(expected_heuristic(3.0, 3.0, 5).unwrap(), 3.0);
        assert!(expected_heuristic(1.0, 2.0, 2).is_err());
        assert!(expected_heuristic(1.0, 0.0, 2).is_err());
    }

    #[test]
    fn convergence_rates() {
        assert_relative_eq!(convergence_rate(1), 0.0);
        assert_relative_eq!(convergence_rate(2), 1.0 / 3.0);
        assert_relative_eq!(convergence_rate(6), 5.0 / 7.0);
    }
}
