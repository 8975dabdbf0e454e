//! k-core decomposition by minimum-degree peeling (Batagelj–Zaversnik).

use crate::graph::{connected_components, Multigraph, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KCoreDecomposition {
    /// Largest k such that the node lies in the k-core.
    pub coreness: Vec<usize>,
    pub max_k: usize,
}

impl KCoreDecomposition {
    /// Nodes of the k-core (not necessarily connected), ascending.
    pub fn core_nodes(&self, k: usize) -> Vec<NodeId> {
        (0..self.coreness.len()).filter(|&v| self.coreness[v] >= k).collect()
    }

    /// The k-core split into its connected pieces, each a connected maximal
    /// induced subgraph of minimum degree ≥ k. Largest piece first.
    pub fn core_components(&self, graph: &Multigraph, k: usize) -> Vec<Vec<NodeId>> {
        let nodes = self.core_nodes(k);
        if nodes.is_empty() {
            return Vec::new();
        }
        let sub = graph.induced_subgraph(&nodes).expect("core nodes exist");
        connected_components(&sub)
            .components
            .into_iter()
            .map(|c| c.into_iter().map(|i| nodes[i]).collect())
            .collect()
    }

    /// Pieces of the innermost (max-k) core.
    pub fn max_core_components(&self, graph: &Multigraph) -> Vec<Vec<NodeId>> {
        self.core_components(graph, self.max_k)
    }
}

pub fn kcore(graph: &Multigraph) -> KCoreDecomposition {
    let n = graph.node_count();
    if n == 0 {
        return KCoreDecomposition {
            coreness: Vec::new(),
            max_k: 0,
        };
    }
    let mut deg: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // Bucket sort by degree: `vert` holds nodes ordered by current degree,
    // `pos` each node's slot, `bin[d]` the first slot of degree d.
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for slot in bin.iter_mut() {
        let count = *slot;
        *slot = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = vert[i];
        for &u in graph.neighbors(v) {
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    pos[u] = pw;
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    let max_k = deg.iter().copied().max().unwrap_or(0);
    KCoreDecomposition { coreness: deg, max_k }
}
