//! Shortest-path betweenness by dependency accumulation (Brandes 2001).

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::{bfs_distances, Multigraph, NodeId};

/// Betweenness under the three conventions in use.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BetweennessScore {
    /// Sum over unordered pairs `{j, k}` (`j, k ≠ i`) of the fraction of
    /// j–k geodesics through i.
    pub pair_sum: f64,
    /// Ordered-pair form: twice the pair sum.
    pub doubled: f64,
    /// `2·pair_sum / ((g−1)(g−2))`, in `[0, 1]`; zero below three nodes.
    pub normalized: f64,
}

const CHUNK: usize = 32;

/// Per-source single-source dependencies, summed in source order so the
/// result does not depend on thread scheduling.
pub fn betweenness(graph: &Multigraph) -> Vec<BetweennessScore> {
    let n = graph.node_count();
    let sources: Vec<NodeId> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            let mut work = Workspace::new(n);
            for &s in chunk {
                work.accumulate(graph, s, &mut acc);
            }
            acc
        })
        .collect();

    let mut total = vec![0.0; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }

    let scale = if n >= 3 {
        2.0 / ((n as f64 - 1.0) * (n as f64 - 2.0))
    } else {
        0.0
    };
    total
        .into_iter()
        .map(|ordered| {
            // Every unordered pair is visited from both endpoints.
            let pair_sum = ordered / 2.0;
            BetweennessScore {
                pair_sum,
                doubled: 2.0 * pair_sum,
                normalized: pair_sum * scale,
            }
        })
        .collect()
}

struct Workspace {
    stack: Vec<NodeId>,
    preds: Vec<Vec<NodeId>>,
    sigma: Vec<f64>,
    dist: Vec<i64>,
    delta: Vec<f64>,
    queue: VecDeque<NodeId>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace {
            stack: Vec::with_capacity(n),
            preds: vec![Vec::new(); n],
            sigma: vec![0.0; n],
            dist: vec![-1; n],
            delta: vec![0.0; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    fn accumulate(&mut self, graph: &Multigraph, s: NodeId, acc: &mut [f64]) {
        for v in self.stack.drain(..) {
            self.preds[v].clear();
            self.sigma[v] = 0.0;
            self.dist[v] = -1;
            self.delta[v] = 0.0;
        }
        self.sigma[s] = 1.0;
        self.dist[s] = 0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.stack.push(v);
            for &w in graph.neighbors(v) {
                if self.dist[w] < 0 {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push(v);
                }
            }
        }
        for &w in self.stack.iter().rev() {
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in &self.preds[w] {
                self.delta[v] += self.sigma[v] * coeff;
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
    }
}

/// Geodesic counts for every ordered pair: `sigma[j][k]` is the number of
/// shortest j–k paths. Quadratic in memory; meant for small graphs and for
/// cross-checking the accumulation above.
#[derive(Debug, Clone)]
pub struct ShortestPathTally {
    pub dist: Vec<Vec<Option<u32>>>,
    pub sigma: Vec<Vec<f64>>,
}

impl ShortestPathTally {
    pub fn compute(graph: &Multigraph) -> Self {
        let n = graph.node_count();
        let dist: Vec<Vec<Option<u32>>> = (0..n).map(|s| bfs_distances(graph, s)).collect();
        let mut sigma = vec![vec![0.0; n]; n];
        for s in 0..n {
            let mut order: Vec<NodeId> = (0..n).filter(|&v| dist[s][v].is_some()).collect();
            order.sort_by_key(|&v| dist[s][v]);
            sigma[s][s] = 1.0;
            for v in order.into_iter().skip(1) {
                let dv = dist[s][v].unwrap();
                sigma[s][v] = graph
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| dist[s][u] == Some(dv - 1))
                    .map(|&u| sigma[s][u])
                    .sum();
            }
        }
        ShortestPathTally { dist, sigma }
    }

    /// Number of j–k geodesics passing through `i` (`i ∉ {j, k}`).
    pub fn through(&self, i: NodeId, j: NodeId, k: NodeId) -> f64 {
        if i == j || i == k {
            return 0.0;
        }
        match (self.dist[j][i], self.dist[i][k], self.dist[j][k]) {
            (Some(a), Some(b), Some(d)) if a + b == d => self.sigma[j][i] * self.sigma[i][k],
            _ => 0.0,
        }
    }

    /// Pair-sum betweenness straight from the definition.
    pub fn pair_sum(&self, i: NodeId) -> f64 {
        let n = self.sigma.len();
        let mut total = 0.0;
        for j in 0..n {
            for k in j + 1..n {
                if j != i && k != i && self.sigma[j][k] > 0.0 {
                    total += self.through(i, j, k) / self.sigma[j][k];
                }
            }
        }
        total
    }
}
