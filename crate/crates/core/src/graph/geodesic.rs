use std::collections::VecDeque;

use rayon::prelude::*;

use super::{GraphError, Multigraph, NodeId};

/// Hop distances from `source` on the simple view; `None` when unreachable.
pub fn bfs_distances(graph: &Multigraph, source: NodeId) -> Vec<Option<u32>> {
    let mut dist = vec![None; graph.node_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &w in graph.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Geodesic distance between two nodes, `None` when they are disconnected.
pub fn distance(graph: &Multigraph, a: NodeId, b: NodeId) -> Result<Option<u32>, GraphError> {
    for v in [a, b] {
        if v >= graph.node_count() {
            return Err(GraphError::UnknownNode(v.to_string()));
        }
    }
    Ok(bfs_distances(graph, a)[b])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicStats {
    /// MGD: largest finite distance.
    pub diameter: u32,
    /// AGD: sum of finite distances over ordered pairs, self-pairs included
    /// at distance 0, divided by the number of such pairs. `None` when the
    /// graph has no non-loop edge.
    pub mean: Option<f64>,
    /// Ordered pairs (self-pairs included) at finite distance.
    pub finite_pairs: u64,
}

pub fn geodesic_stats(graph: &Multigraph) -> GeodesicStats {
    let n = graph.node_count();
    let per_source: Vec<(u64, u64, u32)> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut sum = 0u64;
            let mut count = 0u64;
            let mut max = 0u32;
            for d in bfs_distances(graph, s).into_iter().flatten() {
                sum += u64::from(d);
                count += 1;
                max = max.max(d);
            }
            (sum, count, max)
        })
        .collect();
    let (sum, pairs, diameter) = per_source
        .iter()
        .fold((0u64, 0u64, 0u32), |(s, c, m), &(s1, c1, m1)| (s + s1, c + c1, m.max(m1)));
    let has_edge = (0..n).any(|v| graph.degree(v) > 0);
    GeodesicStats {
        diameter,
        mean: has_edge.then(|| sum as f64 / pairs as f64),
        finite_pairs: pairs,
    }
}

/// `2·UE / (g·(g−1))`, loops excluded; `None` below two nodes.
pub fn density(graph: &Multigraph) -> Option<f64> {
    let g = graph.node_count();
    (g >= 2).then(|| 2.0 * graph.edge_counts().unique as f64 / (g as f64 * (g as f64 - 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete_graph, cycle_graph, path_graph};
    use crate::graph::NodeData;

    #[test]
    fn k5_stats() {
        let s = geodesic_stats(&complete_graph(5));
        assert_eq!(s.diameter, 1);
        assert_eq!(s.mean, Some(0.8));
        assert_eq!(density(&complete_graph(5)), Some(1.0));
    }

    #[test]
    fn triangle_and_dyad() {
        let tri = geodesic_stats(&complete_graph(3)).mean.unwrap();
        assert_eq!(format!("{tri:.3}"), "0.667");
        assert_eq!(geodesic_stats(&complete_graph(2)).mean, Some(0.5));
    }

    #[test]
    fn complete_graph_closed_form() {
        for n in 2..12 {
            let mean = geodesic_stats(&complete_graph(n)).mean.unwrap();
            assert!((mean - (n as f64 - 1.0) / n as f64).abs() < 1e-15, "n={n}");
        }
    }

    #[test]
    fn distances() {
        let p = path_graph(3);
        assert_eq!(distance(&p, 0, 1).unwrap(), Some(1));
        assert_eq!(distance(&p, 0, 2).unwrap(), Some(2));
        let mut two = path_graph(2);
        two.add_node(NodeData::new("x")).unwrap();
        assert_eq!(distance(&two, 0, 2).unwrap(), None);
        assert!(distance(&two, 0, 7).is_err());
    }

    #[test]
    fn edgeless_graph() {
        let g = Multigraph::with_nodes([NodeData::new("a"), NodeData::new("b")]).unwrap();
        assert_eq!(density(&g), Some(0.0));
        let s = geodesic_stats(&g);
        assert_eq!((s.diameter, s.mean, s.finite_pairs), (0, None, 2));
        assert_eq!(density(&Multigraph::with_nodes([NodeData::new("a")]).unwrap()), None);
    }

    #[test]
    fn density_of_sparse_giant() {
        // 850 nodes with 1442 unique edges print as 0.004.
        let d = 2.0 * 1442.0 / (850.0 * 849.0);
        assert_eq!(format!("{d:.3}"), "0.004");
        let c6 = cycle_graph(6);
        assert_eq!(geodesic_stats(&c6).diameter, 3);
    }
}
