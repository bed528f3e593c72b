//! k-th nearest neighbor distances under the Chebyshev (max) metric.
//!
//! The O(n²) scan is the reference path. [`KdTree`] answers the same queries
//! and must return bit-identical distances; both call [`chebyshev_dist`].

use rayon::prelude::*;

use crate::error::{contract, Result};
use crate::sample::Sample;

/// A set of points to query; any [`Sample`] serves.
pub type PointSet = Sample;

/// Neighbor search strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NeighborSearch {
    #[default]
    BruteForce,
    KdTree,
}

/// max_i |a_i − b_i|. Panics on dimension mismatch.
#[inline]
pub fn chebyshev_dist(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "chebyshev_dist: dimension mismatch");
    a.iter()
        .zip(b)
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()))
}

/// Keeps the k smallest values seen so far, sorted ascending.
struct KSmallest {
    k: usize,
    vals: Vec<f64>,
}

impl KSmallest {
    fn new(k: usize) -> Self {
        Self {
            k,
            vals: Vec::with_capacity(k + 1),
        }
    }

    #[inline]
    fn worst(&self) -> f64 {
        if self.vals.len() < self.k {
            f64::INFINITY
        } else {
            self.vals[self.k - 1]
        }
    }

    #[inline]
    fn push(&mut self, d: f64) {
        if d >= self.worst() {
            return;
        }
        let pos = self.vals.partition_point(|&v| v <= d);
        self.vals.insert(pos, d);
        self.vals.truncate(self.k);
    }
}

fn check_k(ps: &PointSet, k: usize) -> Result<()> {
    if k == 0 {
        return Err(contract("neighbor order k must be at least 1"));
    }
    if k >= ps.nrows() {
        return Err(contract(format!(
            "k = {k} requires at least {} points, got {}",
            k + 1,
            ps.nrows()
        )));
    }
    Ok(())
}

/// Distance from each point to its k-th nearest other point, by exhaustive scan.
pub fn kth_neighbor_distances(ps: &PointSet, k: usize) -> Result<Vec<f64>> {
    check_k(ps, k)?;
    let n = ps.nrows();
    Ok((0..n)
        .into_par_iter()
        .map(|i| {
            let p = ps.row(i);
            let mut best = KSmallest::new(k);
            for j in (0..n).filter(|&j| j != i) {
                best.push(chebyshev_dist(p, ps.row(j)));
            }
            best.worst()
        })
        .collect())
}

/// Dispatches on the search strategy.
pub fn kth_neighbor_distances_with(ps: &PointSet, k: usize, search: NeighborSearch) -> Result<Vec<f64>> {
    match search {
        NeighborSearch::BruteForce => kth_neighbor_distances(ps, k),
        NeighborSearch::KdTree => KdTree::build(ps).kth_neighbor_distances(k),
    }
}

const LEAF_SIZE: usize = 8;

enum Node {
    Leaf {
        start: usize,
        end: usize,
    },
    Split {
        dim: usize,
        value: f64,
        left: Box<Node>,
        right: Box<Node>,
    },
}

/// Static k-d tree over a point set, queried with the max metric.
pub struct KdTree<'a> {
    points: &'a PointSet,
    order: Vec<usize>,
    root: Node,
}

impl<'a> KdTree<'a> {
    pub fn build(points: &'a PointSet) -> Self {
        let mut order: Vec<usize> = (0..points.nrows()).collect();
        let root = Self::build_node(points, &mut order, 0);
        Self { points, order, root }
    }

    fn build_node(points: &PointSet, idx: &mut [usize], offset: usize) -> Node {
        let len = idx.len();
        if len <= LEAF_SIZE {
            return Node::Leaf {
                start: offset,
                end: offset + len,
            };
        }
        // split on the coordinate with the widest spread
        let d = points.ncols();
        let (dim, spread) = (0..d)
            .map(|j| {
                let (lo, hi) = idx.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| {
                    let v = points.row(i)[j];
                    (lo.min(v), hi.max(v))
                });
                (j, hi - lo)
            })
            .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
        if spread <= 0.0 {
            return Node::Leaf {
                start: offset,
                end: offset + len,
            };
        }
        let mid = len / 2;
        idx.select_nth_unstable_by(mid, |&a, &b| points.row(a)[dim].total_cmp(&points.row(b)[dim]));
        let value = points.row(idx[mid])[dim];
        let (lo, hi) = idx.split_at_mut(mid);
        Node::Split {
            dim,
            value,
            left: Box::new(Self::build_node(points, lo, offset)),
            right: Box::new(Self::build_node(points, hi, offset + mid)),
        }
    }

    fn search(&self, node: &Node, query: usize, best: &mut KSmallest) {
        match node {
            Node::Leaf { start, end } => {
                let q = self.points.row(query);
                for &j in &self.order[*start..*end] {
                    if j != query {
                        best.push(chebyshev_dist(q, self.points.row(j)));
                    }
                }
            }
            Node::Split {
                dim,
                value,
                left,
                right,
            } => {
                // left holds coordinates <= value, right holds >= value
                let diff = self.points.row(query)[*dim] - value;
                let (near, far) = if diff <= 0.0 { (left, right) } else { (right, left) };
                self.search(near, query, best);
                if diff.abs() < best.worst() {
                    self.search(far, query, best);
                }
            }
        }
    }

    /// Same contract as [`kth_neighbor_distances`].
    pub fn kth_neighbor_distances(&self, k: usize) -> Result<Vec<f64>> {
        check_k(self.points, k)?;
        Ok((0..self.points.nrows())
            .into_par_iter()
            .map(|i| {
                let mut best = KSmallest::new(k);
                self.search(&self.root, i, &mut best);
                best.worst()
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pts(rows: &[&[f64]]) -> PointSet {
        Sample::from_rows(rows).unwrap()
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_dist(&[0.0, 0.0], &[1.0, 0.0]), 1.0);
        assert_eq!(chebyshev_dist(&[0.0, 0.0], &[0.3, -0.7]), 0.7);
        assert_eq!(chebyshev_dist(&[0.4, -2.0], &[0.4, -2.0]), 0.0);
    }

    #[test]
    #[should_panic]
    fn chebyshev_dimension_mismatch() {
        chebyshev_dist(&[0.0], &[0.0, 1.0]);
    }

    #[test]
    fn kth_examples() {
        let line = pts(&[&[0.0], &[0.5], &[1.0]]);
        assert_eq!(kth_neighbor_distances(&line, 1).unwrap(), vec![0.5, 0.5, 0.5]);
        assert_eq!(kth_neighbor_distances(&line, 2).unwrap(), vec![1.0, 0.5, 1.0]);
        let tri = pts(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 2.0]]);
        assert_eq!(kth_neighbor_distances(&tri, 1).unwrap(), vec![1.0, 1.0, 2.0]);
        assert!(kth_neighbor_distances(&line, 3).is_err());
        assert!(kth_neighbor_distances(&line, 0).is_err());
    }

    #[test]
    fn tree_handles_duplicates() {
        let rows: Vec<Vec<f64>> = (0..40).map(|i| vec![(i % 3) as f64, 1.0]).collect();
        let ps = Sample::from_rows(&rows).unwrap();
        for k in 1..10 {
            assert_eq!(
                kth_neighbor_distances(&ps, k).unwrap(),
                KdTree::build(&ps).kth_neighbor_distances(k).unwrap()
            );
        }
    }

    fn point_set() -> impl Strategy<Value = (Vec<f64>, usize, usize)> {
        (1usize..4, 2usize..60).prop_flat_map(|(d, n)| {
            (proptest::collection::vec(-50.0f64..50.0, n * d), Just(n), Just(d))
        })
    }

    proptest! {
        #[test]
        fn tree_matches_scan((data, n, d) in point_set(), k in 1usize..6) {
            prop_assume!(k < n);
            let ps = Sample::new(data, n, d).unwrap();
            prop_assert_eq!(
                kth_neighbor_distances(&ps, k).unwrap(),
                KdTree::build(&ps).kth_neighbor_distances(k).unwrap()
            );
        }

        #[test]
        fn translation_invariant((data, n, d) in point_set(), shift in -4i32..4) {
            // dyadic shifts keep coordinate differences exact
            let ps = Sample::new(data.iter().map(|v| (v * 1024.0).round() / 1024.0).collect(), n, d).unwrap();
            let c = shift as f64 * 0.5;
            let moved = ps.map(|_, v| v + c).unwrap();
            prop_assert_eq!(kth_neighbor_distances(&ps, 1).unwrap(), kth_neighbor_distances(&moved, 1).unwrap());
        }

        #[test]
        fn scale_equivariant((data, n, d) in point_set(), e in -3i32..4) {
            let a = 2f64.powi(e);
            let ps = Sample::new(data, n, d).unwrap();
            let scaled = ps.map(|_, v| a * v).unwrap();
            let base = kth_neighbor_distances(&ps, 1).unwrap();
            let got = kth_neighbor_distances(&scaled, 1).unwrap();
            for (b, g) in base.iter().zip(&got) {
                prop_assert_eq!(a * b, *g);
            }
        }

        #[test]
        fn monotone_in_k((data, n, d) in point_set()) {
            prop_assume!(n > 3);
            let ps = Sample::new(data, n, d).unwrap();
            let mut prev = kth_neighbor_distances(&ps, 1).unwrap();
            for k in 2..n.min(6) {
                let cur = kth_neighbor_distances(&ps, k).unwrap();
                for (p, c) in prev.iter().zip(&cur) {
                    prop_assert!(c >= p);
                }
                prev = cur;
            }
        }
    }
}
