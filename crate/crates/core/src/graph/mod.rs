//! Undirected multigraph with edge multiplicities and self-loops.
//!
//! Multiplicities and loops are bookkeeping: every distance and centrality
//! routine works on the *simple view* (deduplicated, loop-free adjacency)
//! exposed through [`Multigraph::neighbors`].

mod components;
mod geodesic;
mod io;
mod table;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Gender;

pub use components::{connected_components, ComponentDecomposition};
pub use geodesic::{bfs_distances, density, distance, geodesic_stats, GeodesicStats};
pub use io::{read_graph, write_edge_list, write_node_sidecar};
pub use table::{cluster_row, component_metrics_table, ClusterMetricsRow};

pub type NodeId = usize;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("duplicate node id {0:?}")]
    DuplicateNode(String),
    #[error("edge multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("line {line}: {reason}")]
    Malformed { line: u64, reason: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Node attributes. `id` is the unique key (canonical author key or JEL
/// code); `label` is the display form.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct NodeData {
    pub id: String,
    pub label: String,
    pub gender: Option<Gender>,
    pub affiliation: Option<String>,
}

impl NodeData {
    pub fn new(id: impl Into<String>) -> Self {
        let id = id.into();
        NodeData {
            label: id.clone(),
            id,
            gender: None,
            affiliation: None,
        }
    }
}

/// Edge bookkeeping in the codification of the component tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EdgeCounts {
    /// UE: distinct non-loop pairs.
    pub unique: usize,
    /// EwD: non-loop edges beyond the first per pair.
    pub duplicates: usize,
    /// SL: distinct self-loops.
    pub self_loops: usize,
    /// Self-loops counted with multiplicity.
    pub loop_multiplicity: usize,
    /// TE: every edge, duplicates and loops included.
    pub total: usize,
}

impl EdgeCounts {
    /// Distinct links when self-loops are counted as links too.
    pub fn unique_with_loops(&self) -> usize {
        self.unique + self.self_loops
    }
}

#[derive(Debug, Clone, Default)]
pub struct Multigraph {
    nodes: Vec<NodeData>,
    index: HashMap<String, NodeId>,
    edges: BTreeMap<(NodeId, NodeId), u32>,
    neighbors: Vec<Vec<NodeId>>,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_nodes(nodes: impl IntoIterator<Item = NodeData>) -> Result<Self, GraphError> {
        let mut graph = Self::new();
        for node in nodes {
            graph.add_node(node)?;
        }
        Ok(graph)
    }

    /// Builds a graph from declared nodes and `(u, v, multiplicity)` triples
    /// addressed by node id.
    pub fn from_edge_list<'a>(
        nodes: impl IntoIterator<Item = NodeData>,
        weighted_pairs: impl IntoIterator<Item = (&'a str, &'a str, u32)>,
    ) -> Result<Self, GraphError> {
        let mut graph = Self::with_nodes(nodes)?;
        for (u, v, m) in weighted_pairs {
            let u = graph.require(u)?;
            let v = graph.require(v)?;
            graph.add_edge(u, v, m)?;
        }
        Ok(graph)
    }

    pub fn add_node(&mut self, node: NodeData) -> Result<NodeId, GraphError> {
        if self.index.contains_key(&node.id) {
            return Err(GraphError::DuplicateNode(node.id));
        }
        let id = self.nodes.len();
        self.index.insert(node.id.clone(), id);
        self.nodes.push(node);
        self.neighbors.push(Vec::new());
        Ok(id)
    }

    /// Adds `multiplicity` parallel copies of the edge `{u, v}`.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId, multiplicity: u32) -> Result<(), GraphError> {
        if multiplicity == 0 {
            return Err(GraphError::ZeroMultiplicity);
        }
        for x in [u, v] {
            if x >= self.nodes.len() {
                return Err(GraphError::UnknownNode(x.to_string()));
            }
        }
        let key = (u.min(v), u.max(v));
        let slot = self.edges.entry(key).or_insert(0);
        let fresh = *slot == 0;
        *slot += multiplicity;
        if fresh && u != v {
            for (a, b) in [(u, v), (v, u)] {
                let list = &mut self.neighbors[a];
                let pos = list.binary_search(&b).unwrap_err();
                list.insert(pos, b);
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[NodeData] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &NodeData {
        &self.nodes[id]
    }

    pub fn find(&self, id: &str) -> Option<NodeId> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &str) -> Result<NodeId, GraphError> {
        self.find(id).ok_or_else(|| GraphError::UnknownNode(id.to_string()))
    }

    /// Distinct non-loop neighbours, ascending.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[v]
    }

    /// Simple-view degree: the number of distinct neighbours.
    pub fn degree(&self, v: NodeId) -> usize {
        self.neighbors[v].len()
    }

    /// `(u, v, multiplicity)` with `u <= v`, in ascending key order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, u32)> + '_ {
        self.edges.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn multiplicity(&self, u: NodeId, v: NodeId) -> u32 {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    pub fn edge_counts(&self) -> EdgeCounts {
        let mut counts = EdgeCounts::default();
        for (u, v, m) in self.edges() {
            let m = m as usize;
            if u == v {
                counts.self_loops += 1;
                counts.loop_multiplicity += m;
            } else {
                counts.unique += 1;
                counts.duplicates += m - 1;
            }
            counts.total += m;
        }
        counts
    }

    /// Subgraph on `node_set`, keeping every edge (with multiplicity, loops
    /// included) whose endpoints both lie inside. Nodes keep their relative
    /// order.
    pub fn induced_subgraph(&self, node_set: &[NodeId]) -> Result<Multigraph, GraphError> {
        let mut members: Vec<NodeId> = node_set.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&v| v >= self.nodes.len()) {
            return Err(GraphError::UnknownNode(bad.to_string()));
        }
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut sub = Multigraph::new();
        for &v in &members {
            remap[v] = sub.add_node(self.nodes[v].clone())?;
        }
        for &u in &members {
            for (&(a, b), &m) in self.edges.range((u, u)..=(u, usize::MAX)) {
                debug_assert_eq!(a, u);
                if remap[b] != usize::MAX {
                    sub.add_edge(remap[a], remap[b], m)?;
                }
            }
        }
        Ok(sub)
    }

    /// Same graph with multiplicities and loops discarded.
    pub fn simple_view(&self) -> Multigraph {
        let mut out = Multigraph::with_nodes(self.nodes.iter().cloned()).expect("ids are unique");
        for (u, v, _) in self.edges() {
            if u != v {
                out.add_edge(u, v, 1).expect("endpoints exist");
            }
        }
        out
    }

    /// Largest-first component containing the most nodes, as a node list.
    pub fn largest_component(&self) -> Vec<NodeId> {
        connected_components(self)
            .components
            .into_iter()
            .next()
            .unwrap_or_default()
    }
}
