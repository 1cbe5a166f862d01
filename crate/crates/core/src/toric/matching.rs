//! Minimum-weight perfect matching on complete graphs given by a distance.
//!
//! The blossom solver runs on the few nearest neighbours of each node. The
//! final duals then certify optimality against every absent edge; edges
//! that fail the check are added and the solve repeated.

use crate::error::{Error, Result};

use super::blossom::max_weight_matching;

const NEIGHBOURS: usize = 8;

struct EdgeSet {
    n: usize,
    present: Vec<bool>,
    edges: Vec<(usize, usize, i64)>,
}

impl EdgeSet {
    fn add(&mut self, i: usize, j: usize, w: i64) {
        let (a, b) = (i.min(j), i.max(j));
        if !self.present[a * self.n + b] {
            self.present[a * self.n + b] = true;
            self.edges.push((a, b, w));
        }
    }
}

/// Nodes of a complete graph with integer weights.
#[derive(Clone, Debug)]
pub struct MatchingGraph<F> {
    num_nodes: usize,
    weight: F,
    bound: Option<u32>,
}

impl<F: Fn(usize, usize) -> u32> MatchingGraph<F> {
    /// `weight` must be symmetric and nonnegative.
    pub fn new(num_nodes: usize, weight: F) -> Self {
        MatchingGraph { num_nodes, weight, bound: None }
    }

    /// Declares an upper bound on every weight, saving a pass over all pairs.
    pub fn with_bound(mut self, bound: u32) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn weight(&self, i: usize, j: usize) -> u32 {
        (self.weight)(i, j)
    }

    /// Total weight of a set of pairs.
    pub fn total(&self, pairs: &[(usize, usize)]) -> u64 {
        pairs.iter().map(|&(i, j)| u64::from(self.weight(i, j))).sum()
    }

    /// Adds the `k` lightest edges at every node, ties broken by index.
    /// Weights are small integers, so a histogram finds the cut.
    fn add_nearest(&self, k: usize, big: u32, set: &mut EdgeSet, w: &dyn Fn(usize, usize) -> i64) {
        let n = self.num_nodes;
        let mut dist = vec![0u32; n];
        let mut hist = vec![0usize; big as usize + 1];
        for i in 0..n {
            hist.iter_mut().for_each(|h| *h = 0);
            for (j, d) in dist.iter_mut().enumerate() {
                *d = if j == i { big } else { self.weight(i, j).min(big) };
                if j != i {
                    hist[*d as usize] += 1;
                }
            }
            let mut cut = 0;
            let mut below = 0;
            while below + hist[cut] < k {
                below += hist[cut];
                cut += 1;
            }
            let mut at_cut = k - below;
            for (j, &d) in dist.iter().enumerate() {
                if j == i || d as usize > cut {
                    continue;
                }
                if d as usize == cut {
                    if at_cut == 0 {
                        continue;
                    }
                    at_cut -= 1;
                }
                set.add(i, j, w(i, j));
            }
        }
    }

    /// An exact minimum-weight perfect matching as pairs `(i, j)`, `i < j`.
    pub fn min_weight_perfect_matching(&self) -> Result<Vec<(usize, usize)>> {
        let n = self.num_nodes;
        if n % 2 == 1 {
            return Err(Error::Numerical(format!("odd number of defects ({n})")));
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        let big = match self.bound {
            Some(b) => b,
            None => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| self.weight(i, j)).max().unwrap_or(0),
        };
        let cap = big;
        let big = i64::from(big) + 1;
        let w = |i: usize, j: usize| big - i64::from(self.weight(i, j));

        let mut set = EdgeSet { n, present: vec![false; n * n], edges: Vec::new() };
        let mut k = NEIGHBOURS.min(n - 1);
        self.add_nearest(k, cap, &mut set, &w);
        loop {
            let sol = max_weight_matching(n, &set.edges, true);
            if !sol.is_perfect() {
                if k >= n - 1 {
                    return Err(Error::Numerical("complete graph without a perfect matching".into()));
                }
                k = (2 * k).min(n - 1);
                self.add_nearest(k, cap, &mut set, &w);
                continue;
            }
            let mut violated = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if !set.present[i * n + j] && sol.slack(i, j, w(i, j)) < 0 {
                        violated.push((i, j));
                    }
                }
            }
            if violated.is_empty() {
                let mut pairs: Vec<(usize, usize)> = sol
                    .mate
                    .iter()
                    .enumerate()
                    .filter_map(|(i, m)| m.filter(|&j| i < j).map(|j| (i, j)))
                    .collect();
                pairs.sort_unstable();
                return Ok(pairs);
            }
            for (i, j) in violated {
                set.add(i, j, w(i, j));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn brute_force(n: usize, w: &dyn Fn(usize, usize) -> u32) -> u64 {
        let full = (1usize << n) - 1;
        let mut best = vec![u64::MAX; 1 << n];
        best[0] = 0;
        for mask in 1..=full {
            if mask.count_ones() % 2 == 1 {
                continue;
            }
            let i = mask.trailing_zeros() as usize;
            let rest = mask & !(1 << i);
            let mut m = u64::MAX;
            let mut bits = rest;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let sub = best[rest & !(1 << j)];
                if sub != u64::MAX {
                    m = m.min(sub + u64::from(w(i, j)));
                }
            }
            best[mask] = m;
        }
        best[full]
    }

    #[test]
    fn random_metric_instances() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..300 {
            let n = 2 * rng.random_range(1..=7);
            let pts: Vec<(i32, i32)> = (0..n).map(|_| (rng.random_range(0..6), rng.random_range(0..6))).collect();
            let w = |i: usize, j: usize| (pts[i].0.abs_diff(pts[j].0) + pts[i].1.abs_diff(pts[j].1)) as u32;
            let g = MatchingGraph::new(n, w);
            let pairs = g.min_weight_perfect_matching().unwrap();
            assert_eq!(pairs.len(), n / 2);
            assert_eq!(g.total(&pairs), brute_force(n, &w), "trial {trial}");
        }
    }

    #[test]
    fn random_non_metric_weights() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = 2 * rng.random_range(1..=7);
            let table: Vec<u32> = (0..n * n).map(|_| rng.random_range(0..20)).collect();
            let w = |i: usize, j: usize| table[i.min(j) * n + i.max(j)];
            let g = MatchingGraph::new(n, w);
            let pairs = g.min_weight_perfect_matching().unwrap();
            assert_eq!(g.total(&pairs), brute_force(n, &w));
        }
    }

    #[test]
    fn odd_count_rejected() {
        assert!(MatchingGraph::new(3, |_, _| 1).min_weight_perfect_matching().is_err());
        assert!(MatchingGraph::new(0, |_, _| 1).min_weight_perfect_matching().unwrap().is_empty());
    }
}
