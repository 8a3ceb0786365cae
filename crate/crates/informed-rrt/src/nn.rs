//! Nearest-neighbor and radius queries over planner vertices.
//!
//! A k-d tree with round-robin split axes. Vertices are inserted
//! incrementally at the leaves and the whole tree is rebuilt by median
//! splits every time its size doubles, which keeps it balanced without
//! per-insert rebalancing. Query semantics are exact: distances compared
//! with `<=`, ties broken by the smallest id, identical to a linear scan.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::types::sq_dist;
use crate::{Error, Result};

/// Opaque handle of one planner vertex, dense from zero within a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl core::fmt::Display for VertexId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Node {
    slot: u32,
    left: u32,
    right: u32,
}

/// Spatial index over `(state, id)` pairs.
#[derive(Clone, Debug)]
pub struct KdTree {
    dim: usize,
    coords: Vec<f64>,
    ids: Vec<u32>,
    present: Vec<bool>,
    nodes: Vec<Node>,
    root: u32,
    rebuild_at: usize,
}

impl KdTree {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            coords: Vec::new(),
            ids: Vec::new(),
            present: Vec::new(),
            nodes: Vec::new(),
            root: NIL,
            rebuild_at: 64,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    fn point(&self, slot: u32) -> &[f64] {
        let s = slot as usize * self.dim;
        &self.coords[s..s + self.dim]
    }

    /// Inserts a state under a fresh id.
    pub fn insert(&mut self, x: &[f64], id: VertexId) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let raw = id.index();
        if raw < self.present.len() && self.present[raw] {
            return Err(Error::DuplicateVertex(id.0));
        }
        if raw >= self.present.len() {
            self.present.resize(raw + 1, false);
        }
        self.present[raw] = true;

        let slot = self.ids.len() as u32;
        self.coords.extend_from_slice(x);
        self.ids.push(id.0);
        let node = self.nodes.len() as u32;
        self.nodes.push(Node { slot, left: NIL, right: NIL });

        if self.root == NIL {
            self.root = node;
        } else {
            let mut cur = self.root;
            let mut depth = 0usize;
            loop {
                let axis = depth % self.dim;
                let go_left = x[axis] < self.point(self.nodes[cur as usize].slot)[axis];
                let child = if go_left {
                    &mut self.nodes[cur as usize].left
                } else {
                    &mut self.nodes[cur as usize].right
                };
                if *child == NIL {
                    *child = node;
                    break;
                }
                cur = *child;
                depth += 1;
            }
        }

        if self.len() >= self.rebuild_at {
            self.rebuild();
            self.rebuild_at = self.len() * 2;
        }
        Ok(())
    }

    fn rebuild(&mut self) {
        let mut slots: Vec<u32> = (0..self.ids.len() as u32).collect();
        self.nodes.clear();
        self.nodes.reserve(slots.len());
        let coords = core::mem::take(&mut self.coords);
        self.root = self.build(&mut slots, 0, &coords);
        self.coords = coords;
    }

    fn build(&mut self, slots: &mut [u32], depth: usize, coords: &[f64]) -> u32 {
        if slots.is_empty() {
            return NIL;
        }
        let axis = depth % self.dim;
        let mid = slots.len() / 2;
        slots.select_nth_unstable_by(mid, |&a, &b| {
            coords[a as usize * self.dim + axis].total_cmp(&coords[b as usize * self.dim + axis])
        });
        let slot = slots[mid];
        let node = self.nodes.len() as u32;
        self.nodes.push(Node { slot, left: NIL, right: NIL });
        let (lo, rest) = slots.split_at_mut(mid);
        let hi = &mut rest[1..];
        let left = self.build(lo, depth + 1, coords);
        let right = self.build(hi, depth + 1, coords);
        self.nodes[node as usize].left = left;
        self.nodes[node as usize].right = right;
        node
    }

    /// The id closest to `x` in Euclidean distance; ties go to the smallest id.
    pub fn nearest(&self, x: &[f64]) -> Result<VertexId> {
        if self.is_empty() {
            return Err(Error::EmptyIndex);
        }
        let mut best_sq = f64::INFINITY;
        let mut best_id = u32::MAX;
        // Stack of (node, depth, squared distance to the splitting plane
        // that guards the subtree); pruned against the best at pop time.
        let mut stack: Vec<(u32, usize, f64)> = Vec::with_capacity(64);
        stack.push((self.root, 0, 0.0));
        while let Some((node, depth, guard_sq)) = stack.pop() {
            if node == NIL || guard_sq > best_sq {
                continue;
            }
            let n = &self.nodes[node as usize];
            let p = self.point(n.slot);
            let d_sq = sq_dist(x, p);
            let id = self.ids[n.slot as usize];
            if d_sq < best_sq || (d_sq == best_sq && id < best_id) {
                best_sq = d_sq;
                best_id = id;
            }
            let axis = depth % self.dim;
            let dx = x[axis] - p[axis];
            let (near, far) = if dx < 0.0 { (n.left, n.right) } else { (n.right, n.left) };
            // Far side first so the near side is explored first (LIFO).
            stack.push((far, depth + 1, dx * dx));
            stack.push((near, depth + 1, 0.0));
        }
        Ok(VertexId(best_id))
    }

    /// Every id within distance `r` of `x` (inclusive), ascending by id.
    pub fn near(&self, x: &[f64], r: f64) -> Vec<VertexId> {
        let mut out = Vec::new();
        self.near_into(x, r, &mut out);
        out
    }

    pub(crate) fn near_into(&self, x: &[f64], r: f64, out: &mut Vec<VertexId>) {
        out.clear();
        if self.is_empty() || r < 0.0 {
            return;
        }
        let mut stack: Vec<(u32, usize)> = Vec::with_capacity(64);
        stack.push((self.root, 0));
        while let Some((node, depth)) = stack.pop() {
            if node == NIL {
                continue;
            }
            let n = &self.nodes[node as usize];
            let p = self.point(n.slot);
            // Compare via sqrt so membership agrees exactly with reported
            // nearest distances.
            if sq_dist(x, p).sqrt() <= r {
                out.push(VertexId(self.ids[n.slot as usize]));
            }
            let axis = depth % self.dim;
            let dx = x[axis] - p[axis];
            // Left subtree holds coordinates <= p[axis], right >= p[axis].
            if dx <= r {
                stack.push((n.left, depth + 1));
            }
            if -dx <= r {
                stack.push((n.right, depth + 1));
            }
        }
        out.sort_unstable();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Reference implementation: scan every point.
    fn scan_nearest(points: &[Vec<f64>], x: &[f64]) -> u32 {
        let mut best = (f64::INFINITY, u32::MAX);
        for (id, p) in points.iter().enumerate() {
            let d = sq_dist(p, x);
            if d < best.0 || (d == best.0 && (id as u32) < best.1) {
                best = (d, id as u32);
            }
        }
        best.1
    }

    fn scan_near(points: &[Vec<f64>], x: &[f64], r: f64) -> Vec<u32> {
        points
            .iter()
            .enumerate()
            .filter(|(_, p)| sq_dist(p, x).sqrt() <= r)
            .map(|(id, _)| id as u32)
            .collect()
    }

    #[test]
    fn single_element() {
        let mut t = KdTree::new(2);
        t.insert(&[1.0, 2.0], VertexId(0)).unwrap();
        assert_eq!(t.nearest(&[5.0, 5.0]).unwrap(), VertexId(0));
        assert_eq!(t.near(&[1.0, 2.0], 0.0), vec![VertexId(0)]);
    }

    #[test]
    fn empty_index_errors() {
        let t = KdTree::new(2);
        assert_eq!(t.nearest(&[0.0, 0.0]).unwrap_err(), Error::EmptyIndex);
        assert!(t.near(&[0.0, 0.0], 1.0).is_empty());
    }

    #[test]
    fn duplicate_id_rejected() {
        let mut t = KdTree::new(2);
        t.insert(&[0.0, 0.0], VertexId(3)).unwrap();
        assert_eq!(t.insert(&[1.0, 1.0], VertexId(3)).unwrap_err(), Error::DuplicateVertex(3));
    }

    #[test]
    fn equidistant_tie_goes_to_smaller_id() {
        let mut t = KdTree::new(2);
        t.insert(&[1.0, 0.0], VertexId(1)).unwrap();
        t.insert(&[-1.0, 0.0], VertexId(0)).unwrap();
        t.insert(&[0.0, 5.0], VertexId(2)).unwrap();
        assert_eq!(t.nearest(&[0.0, 0.0]).unwrap(), VertexId(0));
        // Exact duplicates as well.
        let mut t = KdTree::new(2);
        t.insert(&[2.0, 2.0], VertexId(7)).unwrap();
        t.insert(&[2.0, 2.0], VertexId(4)).unwrap();
        assert_eq!(t.nearest(&[2.0, 2.0]).unwrap(), VertexId(4));
    }

    #[test]
    fn radius_zero_returns_exact_duplicates_only() {
        let mut t = KdTree::new(2);
        t.insert(&[1.0, 1.0], VertexId(0)).unwrap();
        t.insert(&[1.0, 1.0], VertexId(1)).unwrap();
        t.insert(&[1.0, 1.0 + 1e-12], VertexId(2)).unwrap();
        assert_eq!(t.near(&[1.0, 1.0], 0.0), vec![VertexId(0), VertexId(1)]);
    }

    #[test]
    fn matches_linear_scan_on_random_batches() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for dim in [2usize, 3, 5] {
            let mut t = KdTree::new(dim);
            let mut points: Vec<Vec<f64>> = Vec::new();
            for id in 0..1000u32 {
                let p: Vec<f64> = (0..dim).map(|_| rng.random_range(-5.0..5.0)).collect();
                t.insert(&p, VertexId(id)).unwrap();
                points.push(p);

                if id % 37 == 0 {
                    let q: Vec<f64> = (0..dim).map(|_| rng.random_range(-6.0..6.0)).collect();
                    assert_eq!(t.nearest(&q).unwrap().0, scan_nearest(&points, &q));
                    let r = rng.random_range(0.0..4.0);
                    let got: Vec<u32> = t.near(&q, r).iter().map(|v| v.0).collect();
                    assert_eq!(got, scan_near(&points, &q, r));
                }
            }
            // Radius covering everything returns all ids in order.
            let all = t.near(&vec![0.0; dim], 1e9);
            assert_eq!(all.len(), 1000);
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn nearest_is_contained_in_its_own_radius_query() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut t = KdTree::new(3);
        let mut points = Vec::new();
        for id in 0..500u32 {
            let p: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
            t.insert(&p, VertexId(id)).unwrap();
            points.push(p);
        }
        for _ in 0..100 {
            let q: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
            let nearest = t.nearest(&q).unwrap();
            let d = sq_dist(&points[nearest.index()], &q).sqrt();
            assert!(t.near(&q, d).contains(&nearest));
        }
    }
}
