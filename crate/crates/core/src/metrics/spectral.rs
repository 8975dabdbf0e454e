//! Eigenvector centrality and PageRank by power iteration.

use crate::graph::{Multigraph, NodeId};

use super::MetricsError;

pub const EIGEN_TOLERANCE: f64 = 1e-10;
pub const EIGEN_MAX_ITERATIONS: usize = 100_000;
pub const PAGERANK_TOLERANCE: f64 = 1e-10;
pub const PAGERANK_MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorResult {
    /// Non-negative, summing to 1; zero outside the largest component.
    pub scores: Vec<f64>,
    /// Dominant adjacency eigenvalue (Rayleigh quotient).
    pub eigenvalue: f64,
    pub iterations: usize,
}

/// Dominant eigenvector of the simple adjacency matrix, computed on the
/// largest connected component. Iterates `x ← (A + I)x`: the unit shift
/// keeps bipartite components from oscillating and leaves the eigenvector
/// unchanged.
pub fn eigenvector(graph: &Multigraph) -> Result<EigenvectorResult, MetricsError> {
    let n = graph.node_count();
    if (0..n).all(|v| graph.degree(v) == 0) {
        return Err(MetricsError::NoEdges);
    }
    let component = graph.largest_component();
    let m = component.len();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in component.iter().enumerate() {
        local[v] = i;
    }
    let adjacency: Vec<Vec<usize>> = component
        .iter()
        .map(|&v| graph.neighbors(v).iter().map(|&w| local[w]).collect())
        .collect();

    let mut x = vec![1.0 / m as f64; m];
    let mut next = vec![0.0; m];
    for iteration in 1..=EIGEN_MAX_ITERATIONS {
        for i in 0..m {
            next[i] = x[i] + adjacency[i].iter().map(|&j| x[j]).sum::<f64>();
        }
        let total: f64 = next.iter().sum();
        let mut change = 0.0;
        for i in 0..m {
            next[i] /= total;
            change += (next[i] - x[i]).abs();
        }
        std::mem::swap(&mut x, &mut next);
        if change < EIGEN_TOLERANCE {
            let ax_dot_x: f64 = (0..m)
                .map(|i| x[i] * adjacency[i].iter().map(|&j| x[j]).sum::<f64>())
                .sum();
            let x_dot_x: f64 = x.iter().map(|v| v * v).sum();
            let mut scores = vec![0.0; n];
            for (i, &v) in component.iter().enumerate() {
                scores[v] = x[i];
            }
            return Ok(EigenvectorResult {
                scores,
                eigenvalue: ax_dot_x / x_dot_x,
                iterations: iteration,
            });
        }
    }
    Err(MetricsError::NotConverged {
        iterations: EIGEN_MAX_ITERATIONS,
    })
}

/// Damped random-surfer scores on the simple view, scaled to mean 1
/// (`Σ = g`). Isolated nodes hand their mass back uniformly and receive
/// only the teleport share.
pub fn pagerank(graph: &Multigraph, damping: f64) -> Vec<f64> {
    let n = graph.node_count();
    if n == 0 {
        return Vec::new();
    }
    let nf = n as f64;
    let dangling: Vec<NodeId> = (0..n).filter(|&v| graph.degree(v) == 0).collect();
    let mut x = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    for _ in 0..PAGERANK_MAX_ITERATIONS {
        let dangling_mass: f64 = dangling.iter().map(|&v| x[v]).sum();
        let base = (1.0 - damping) / nf + damping * dangling_mass / nf;
        for (v, slot) in next.iter_mut().enumerate() {
            let inflow: f64 = graph
                .neighbors(v)
                .iter()
                .map(|&u| x[u] / graph.degree(u) as f64)
                .sum();
            *slot = base + damping * inflow;
        }
        let change: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if change < PAGERANK_TOLERANCE {
            break;
        }
    }
    let total: f64 = x.iter().sum();
    x.iter().map(|v| v * nf / total).collect()
}
