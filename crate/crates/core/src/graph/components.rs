use std::collections::VecDeque;

use super::{Multigraph, NodeId};

/// Connected components, largest first; ties go to the component holding the
/// smaller node id, so labels `G1..Gn` are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    /// Each component's node ids, ascending.
    pub components: Vec<Vec<NodeId>>,
    /// Component index per node.
    pub membership: Vec<usize>,
}

impl ComponentDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    pub fn label(index: usize) -> String {
        format!("G{}", index + 1)
    }
}

pub fn connected_components(graph: &Multigraph) -> ComponentDecomposition {
    let n = graph.node_count();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut members = Vec::new();
        while let Some(v) = queue.pop_front() {
            members.push(v);
            for &w in graph.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    // Discovery order is by smallest member, so a stable sort on size keeps
    // the tie-break.
    components.sort_by_key(|c: &Vec<NodeId>| std::cmp::Reverse(c.len()));

    let mut membership = vec![0; n];
    for (i, comp) in components.iter().enumerate() {
        for &v in comp {
            membership[v] = i;
        }
    }
    ComponentDecomposition {
        components,
        membership,
    }
}
