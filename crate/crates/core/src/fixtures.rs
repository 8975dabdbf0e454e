//! Deterministic graphs and corpora shared by the test suites and the
//! acceptance checks.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{normalize_name, AuthorRecord, Corpus, JelCode, PaperEntry};
use crate::graph::{Multigraph, NodeData};

fn numbered(n: usize) -> Multigraph {
    Multigraph::with_nodes((0..n).map(|i| NodeData::new(format!("n{i}")))).unwrap()
}

pub fn complete_graph(n: usize) -> Multigraph {
    let mut g = numbered(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v, 1).unwrap();
        }
    }
    g
}

pub fn path_graph(n: usize) -> Multigraph {
    let mut g = numbered(n);
    for v in 1..n {
        g.add_edge(v - 1, v, 1).unwrap();
    }
    g
}

pub fn cycle_graph(n: usize) -> Multigraph {
    let mut g = path_graph(n);
    if n > 2 {
        g.add_edge(n - 1, 0, 1).unwrap();
    }
    g
}

/// Node 0 is the centre.
pub fn star_graph(leaves: usize) -> Multigraph {
    let mut g = numbered(leaves + 1);
    for v in 1..=leaves {
        g.add_edge(0, v, 1).unwrap();
    }
    g
}

/// Node ids are prefixed with the part index (`p3:n0`).
pub fn disjoint_union(parts: &[Multigraph]) -> Multigraph {
    let mut out = Multigraph::new();
    for (i, part) in parts.iter().enumerate() {
        let offset = out.node_count();
        for node in part.nodes() {
            let mut node = node.clone();
            node.id = format!("p{i}:{}", node.id);
            out.add_node(node).unwrap();
        }
        for (u, v, m) in part.edges() {
            out.add_edge(offset + u, offset + v, m).unwrap();
        }
    }
    out
}

/// Seeded G(n, p) graph on the simple view.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = numbered(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                g.add_edge(u, v, 1).unwrap();
            }
        }
    }
    g
}

/// Seeded uniformly random recursive tree on `n` nodes.
pub fn random_tree(n: usize, seed: u64) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = numbered(n);
    for v in 1..n {
        let parent = rng.random_range(0..v);
        g.add_edge(parent, v, 1).unwrap();
    }
    g
}

/// Giant component of [`seventeen_components`]: 850 nodes, 1442
/// unique edges, 167 duplicate edges. A Hamiltonian path plus short-range
/// chords keeps the graph stretched like a sparse collaboration network.
pub fn sparse_giant() -> Multigraph {
    const NODES: usize = 850;
    const UNIQUE: usize = 1442;
    const DUPLICATES: usize = 167;
    const REACH: usize = 107;

    let mut rng = ChaCha8Rng::seed_from_u64(0x7ab1e1);
    let mut pairs: BTreeSet<(usize, usize)> = (1..NODES).map(|v| (v - 1, v)).collect();
    while pairs.len() < UNIQUE {
        let u = rng.random_range(0..NODES);
        let v = u + rng.random_range(2..=REACH);
        if v < NODES {
            pairs.insert((u, v));
        }
    }
    let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
    let mut doubled = BTreeSet::new();
    while doubled.len() < DUPLICATES {
        doubled.insert(rng.random_range(0..pairs.len()));
    }

    let mut g = Multigraph::with_nodes((0..NODES).map(|i| NodeData::new(format!("a{i:03}")))).unwrap();
    for (i, &(u, v)) in pairs.iter().enumerate() {
        let m = if doubled.contains(&i) { 2 } else { 1 };
        g.add_edge(u, v, m).unwrap();
    }
    g
}

/// Seventeen components: the 850-node giant, one 5-clique, five triangles
/// and ten dyads (890 nodes, 1644 total edges).
pub fn seventeen_components() -> Multigraph {
    let mut parts = vec![sparse_giant(), complete_graph(5)];
    parts.extend((0..5).map(|_| complete_graph(3)));
    parts.extend((0..10).map(|_| complete_graph(2)));
    disjoint_union(&parts)
}

/// Letter+digit codes `A0..Z9` over the JEL first-letter categories.
pub fn jel_code_pool() -> Vec<JelCode> {
    let letters = "ABCDEFGHIJKLMNOPQRZ";
    letters
        .chars()
        .flat_map(|l| (0..10).map(move |d| JelCode::new(&format!("{l}{d}")).unwrap()))
        .collect()
}

/// A corpus whose JEL network has 109 codes, 417 distinct non-loop links and
/// 34 self-loops, forms one component and has diameter 6.
///
/// Layout: a hub adjacent to 102 codes that are densely cross-linked, plus
/// two pendant chains of three codes hanging off the hub. Only the chain
/// ends sit at distance 3 from the hub, so the diameter is exactly 6.
pub fn jel_aggregate_corpus() -> Corpus {
    let pool = jel_code_pool();
    let codes: Vec<JelCode> = pool.into_iter().take(109).collect();
    let hub = 0;
    let chain_a = [1, 2, 3];
    let chain_b = [4, 5, 6];
    let leaves: Vec<usize> = (7..109).collect();

    let mut links: Vec<(usize, usize)> = vec![
        (hub, chain_a[0]),
        (chain_a[0], chain_a[1]),
        (chain_a[1], chain_a[2]),
        (hub, chain_b[0]),
        (chain_b[0], chain_b[1]),
        (chain_b[1], chain_b[2]),
    ];
    links.extend(leaves.iter().map(|&l| (hub, l)));
    'outer: for stride in 1.. {
        for i in 0..leaves.len() - stride {
            if links.len() == 417 {
                break 'outer;
            }
            links.push((leaves[i], leaves[i + stride]));
        }
    }
    let loops: Vec<usize> = leaves.iter().copied().take(34).collect();

    let mut entries = Vec::new();
    let mut directory = BTreeMap::new();
    let mut push = |jel: Vec<JelCode>| {
        let i = entries.len() + 1;
        let author = normalize_name(&format!("Author {i:03}")).unwrap();
        directory.insert(author.clone(), AuthorRecord::unclassified(author.clone()));
        entries.push(PaperEntry {
            paper_id: format!("j{i:03}"),
            year: 1990 + (i % 25) as i32,
            title: String::new(),
            authors: vec![author],
            affiliations: Vec::new(),
            jel,
        });
    };
    for (u, v) in links {
        push(vec![codes[u].clone(), codes[v].clone()]);
    }
    for l in loops {
        push(vec![codes[l].clone()]);
    }
    Corpus::new(entries, directory).unwrap()
}
