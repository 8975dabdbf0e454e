//! Degree, closeness and local clustering.

use rayon::prelude::*;

use crate::graph::{bfs_distances, Multigraph};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeScore {
    /// Distinct neighbours, loops excluded.
    pub raw: usize,
    /// `raw / (g − 1)`; zero for a single node.
    pub normalized: f64,
}

pub fn degree(graph: &Multigraph) -> Vec<DegreeScore> {
    let g = graph.node_count();
    (0..g)
        .map(|v| {
            let raw = graph.degree(v);
            let normalized = if g >= 2 { raw as f64 / (g as f64 - 1.0) } else { 0.0 };
            DegreeScore { raw, normalized }
        })
        .collect()
}

/// `1 / Σ d(v, u)` over nodes reachable from v; 0 for isolated nodes.
pub fn closeness(graph: &Multigraph) -> Vec<f64> {
    (0..graph.node_count())
        .into_par_iter()
        .map(|v| {
            let total: u64 = bfs_distances(graph, v).into_iter().flatten().map(u64::from).sum();
            if total == 0 {
                0.0
            } else {
                1.0 / total as f64
            }
        })
        .collect()
}

/// Local clustering: closed neighbour pairs over `deg·(deg−1)/2`; 0 when
/// the degree is below two.
pub fn clustering_coefficient(graph: &Multigraph) -> Vec<f64> {
    let n = graph.node_count();
    let mut mark = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let nbrs = graph.neighbors(v);
        let k = nbrs.len();
        if k < 2 {
            out.push(0.0);
            continue;
        }
        for &u in nbrs {
            mark[u] = true;
        }
        let mut links = 0usize;
        for &u in nbrs {
            links += graph.neighbors(u).iter().filter(|&&w| w > u && mark[w]).count();
        }
        for &u in nbrs {
            mark[u] = false;
        }
        out.push(links as f64 / (k * (k - 1) / 2) as f64);
    }
    out
}
