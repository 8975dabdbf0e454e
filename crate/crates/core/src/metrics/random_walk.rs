//! Random-walk (current-flow) betweenness and hitting-time closeness.
//!
//! Both run per connected component on the loop-free simple view. A unit
//! current injected at s and extracted at t sets node potentials
//! `V = T e_s − T e_t`, where `T` is the inverse of the Laplacian with one
//! node grounded (row and column removed, zero potential). The current
//! through node i is half the absolute current on its incident edges.
//! Self-loops carry no net current and are dropped.

use nalgebra::{Cholesky, DMatrix};
use rayon::prelude::*;

use crate::graph::{connected_components, Multigraph, NodeId};

use super::MetricsError;

#[derive(Debug, Clone, PartialEq)]
pub struct RandomWalkScores {
    pub betweenness: Vec<f64>,
    pub closeness: Vec<f64>,
    /// Distinct self-loops ignored by the computation.
    pub dropped_loops: usize,
}

struct ComponentSystem {
    nodes: Vec<NodeId>,
    adjacency: Vec<Vec<usize>>,
    /// Grounded inverse, symmetric, `n × n` with zero row/column 0.
    inverse: Vec<Vec<f64>>,
}

impl ComponentSystem {
    fn new(graph: &Multigraph, nodes: Vec<NodeId>) -> Result<Self, MetricsError> {
        let n = nodes.len();
        let mut local = std::collections::HashMap::with_capacity(n);
        for (i, &v) in nodes.iter().enumerate() {
            local.insert(v, i);
        }
        let adjacency: Vec<Vec<usize>> = nodes
            .iter()
            .map(|&v| graph.neighbors(v).iter().map(|w| local[w]).collect())
            .collect();

        let mut grounded = DMatrix::<f64>::zeros(n - 1, n - 1);
        for i in 1..n {
            grounded[(i - 1, i - 1)] = adjacency[i].len() as f64;
            for &j in &adjacency[i] {
                if j != 0 {
                    grounded[(i - 1, j - 1)] = -1.0;
                }
            }
        }
        let inv = Cholesky::new(grounded)
            .ok_or(MetricsError::SingularLaplacian { size: n })?
            .inverse();
        let mut inverse = vec![vec![0.0; n]; n];
        for i in 1..n {
            for j in 1..n {
                inverse[i][j] = inv[(i - 1, j - 1)];
            }
        }
        Ok(ComponentSystem {
            nodes,
            adjacency,
            inverse,
        })
    }

    /// Σ over unordered source–sink pairs of the current through each node,
    /// endpoints excluded.
    fn throughput(&self) -> Vec<f64> {
        let n = self.nodes.len();
        let partials: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|s| {
                let mut acc = vec![0.0; n];
                let mut potential = vec![0.0; n];
                for t in s + 1..n {
                    for (i, p) in potential.iter_mut().enumerate() {
                        *p = self.inverse[s][i] - self.inverse[t][i];
                    }
                    for i in 0..n {
                        if i == s || i == t {
                            continue;
                        }
                        let flow: f64 = self.adjacency[i]
                            .iter()
                            .map(|&j| (potential[i] - potential[j]).abs())
                            .sum();
                        acc[i] += 0.5 * flow;
                    }
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
        total
    }

    /// `(n − 1) / Σ_s H(s → t)` for each target t, with hitting times taken
    /// from the Laplacian pseudo-inverse:
    /// `H(s → t) = 2m (L⁺_tt − L⁺_st) + Σ_k d_k (L⁺_sk − L⁺_tk)`.
    fn hitting_closeness(&self) -> Vec<f64> {
        let n = self.nodes.len();
        let nf = n as f64;
        let row_mean: Vec<f64> = self.inverse.iter().map(|r| r.iter().sum::<f64>() / nf).collect();
        let grand = row_mean.iter().sum::<f64>() / nf;
        let pinv = |i: usize, j: usize| self.inverse[i][j] - row_mean[i] - row_mean[j] + grand;

        let degree: Vec<f64> = self.adjacency.iter().map(|a| a.len() as f64).collect();
        let two_m: f64 = degree.iter().sum();
        let weighted: Vec<f64> = (0..n)
            .map(|s| (0..n).map(|k| degree[k] * pinv(s, k)).sum())
            .collect();

        (0..n)
            .map(|t| {
                let total: f64 = (0..n)
                    .filter(|&s| s != t)
                    .map(|s| two_m * (pinv(t, t) - pinv(s, t)) + weighted[s] - weighted[t])
                    .sum();
                (nf - 1.0) / total
            })
            .collect()
    }
}

fn components_from(graph: &Multigraph, min_size: usize) -> Vec<Vec<NodeId>> {
    connected_components(graph)
        .components
        .into_iter()
        .filter(|c| c.len() >= min_size)
        .collect()
}

fn log_loops(graph: &Multigraph) -> usize {
    let loops = graph.edge_counts().self_loops;
    if loops > 0 {
        log::debug!("random-walk centralities: dropped {loops} self-loops");
    }
    loops
}

/// Current-flow betweenness: for every unordered source–sink pair in a
/// component, the current through each other node, summed. Components
/// smaller than three nodes score 0. On a tree this equals the
/// shortest-path pair-sum betweenness.
pub fn rw_betweenness(graph: &Multigraph) -> Result<Vec<f64>, MetricsError> {
    log_loops(graph);
    let mut out = vec![0.0; graph.node_count()];
    for nodes in components_from(graph, 3) {
        let system = ComponentSystem::new(graph, nodes)?;
        for (i, value) in system.throughput().into_iter().enumerate() {
            out[system.nodes[i]] = value;
        }
    }
    Ok(out)
}

/// Reciprocal mean hitting time of a simple random walk started at the
/// other nodes of the component. Isolated nodes score 0.
pub fn rw_closeness(graph: &Multigraph) -> Result<Vec<f64>, MetricsError> {
    log_loops(graph);
    let mut out = vec![0.0; graph.node_count()];
    for nodes in components_from(graph, 2) {
        let system = ComponentSystem::new(graph, nodes)?;
        for (i, value) in system.hitting_closeness().into_iter().enumerate() {
            out[system.nodes[i]] = value;
        }
    }
    Ok(out)
}

/// Both measures sharing one factorization per component.
pub fn random_walk_centralities(graph: &Multigraph) -> Result<RandomWalkScores, MetricsError> {
    let dropped_loops = log_loops(graph);
    let n = graph.node_count();
    let mut betweenness = vec![0.0; n];
    let mut closeness = vec![0.0; n];
    for nodes in components_from(graph, 2) {
        let system = ComponentSystem::new(graph, nodes)?;
        if system.nodes.len() >= 3 {
            for (i, value) in system.throughput().into_iter().enumerate() {
                betweenness[system.nodes[i]] = value;
            }
        }
        for (i, value) in system.hitting_closeness().into_iter().enumerate() {
            closeness[system.nodes[i]] = value;
        }
    }
    Ok(RandomWalkScores {
        betweenness,
        closeness,
        dropped_loops,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete_graph, cycle_graph, path_graph, star_graph};

    #[test]
    fn path_of_three() {
        let b = rw_betweenness(&path_graph(3)).unwrap();
        assert!((b[1] - 1.0).abs() < 1e-12);
        assert!(b[0].abs() < 1e-12 && b[2].abs() < 1e-12);
    }

    #[test]
    fn four_cycle_symmetric() {
        let b = rw_betweenness(&cycle_graph(4)).unwrap();
        assert!(b.iter().all(|x| (x - b[0]).abs() < 1e-12));
        // Adjacent pairs push 1/4 through each far node, opposite pairs 1/2
        // through each of the other two.
        assert!((b[0] - 1.0).abs() < 1e-12, "{b:?}");
    }

    #[test]
    fn dyad_closeness() {
        let c = rw_closeness(&complete_graph(2)).unwrap();
        assert!((c[0] - 1.0).abs() < 1e-12 && (c[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn star_center_closer() {
        let c = rw_closeness(&star_graph(4)).unwrap();
        // Leaves reach the centre in one step; the centre needs 2m − 1 = 7.
        assert!((c[0] - 1.0).abs() < 1e-9);
        assert!((c[1] - 4.0 / (7.0 + 3.0 * 8.0)).abs() < 1e-9, "{c:?}");
        assert!(c[0] > c[1]);
    }

    #[test]
    fn loops_are_dropped() {
        let mut g = path_graph(3);
        g.add_edge(1, 1, 4).unwrap();
        let scores = random_walk_centralities(&g).unwrap();
        assert_eq!(scores.dropped_loops, 1);
        assert!((scores.betweenness[1] - 1.0).abs() < 1e-12);
    }
}
