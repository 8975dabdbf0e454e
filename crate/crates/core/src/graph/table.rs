use super::{connected_components, density, geodesic_stats, ComponentDecomposition, Multigraph};

/// Structural metrics of one (sub)graph: a component, an affiliation group
/// or a JEL letter cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterMetricsRow {
    pub label: String,
    /// N
    pub nodes: usize,
    /// UE
    pub unique_edges: usize,
    /// EwD
    pub duplicate_edges: usize,
    /// TE
    pub total_edges: usize,
    /// SL
    pub self_loops: usize,
    /// CC
    pub components: usize,
    /// SVCC
    pub single_vertex_components: usize,
    /// MVCC
    pub max_component_nodes: usize,
    /// MECC: total edges (duplicates and loops included) of the largest
    /// component.
    pub max_component_edges: usize,
    /// MGD
    pub diameter: u32,
    /// AGD; `None` prints as `-`.
    pub mean_geodesic: Option<f64>,
    /// D; `None` (no non-loop edge, or fewer than two nodes) prints as `-`.
    pub density: Option<f64>,
}

pub fn cluster_row(label: impl Into<String>, graph: &Multigraph) -> ClusterMetricsRow {
    let counts = graph.edge_counts();
    let decomposition = connected_components(graph);
    let stats = geodesic_stats(graph);
    let (mvcc, mecc) = match decomposition.components.first() {
        Some(largest) => {
            let sub = graph.induced_subgraph(largest).expect("component nodes exist");
            (largest.len(), sub.edge_counts().total)
        }
        None => (0, 0),
    };
    ClusterMetricsRow {
        label: label.into(),
        nodes: graph.node_count(),
        unique_edges: counts.unique,
        duplicate_edges: counts.duplicates,
        total_edges: counts.total,
        self_loops: counts.self_loops,
        components: decomposition.len(),
        single_vertex_components: decomposition.components.iter().filter(|c| c.len() == 1).count(),
        max_component_nodes: mvcc,
        max_component_edges: mecc,
        diameter: stats.diameter,
        mean_geodesic: stats.mean,
        density: if counts.unique == 0 { None } else { density(graph) },
    }
}

/// One row per connected component, labelled `G1..Gn` largest first.
pub fn component_metrics_table(graph: &Multigraph) -> Vec<ClusterMetricsRow> {
    connected_components(graph)
        .components
        .iter()
        .enumerate()
        .map(|(i, nodes)| {
            let sub = graph.induced_subgraph(nodes).expect("component nodes exist");
            cluster_row(ComponentDecomposition::label(i), &sub)
        })
        .collect()
}
