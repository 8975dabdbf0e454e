//! Slow, direct reference implementations used to cross-check the library.
//! Each one works from the adjacency sets alone and shares no code with the
//! algorithm it checks.

#![allow(dead_code)]

use std::collections::BTreeSet;

use coauthnet::Multigraph;
use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Loop-free neighbor sets.
pub fn adjacency(g: &Multigraph) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); g.node_count()];
    for (u, v, _) in g.edges() {
        if u != v {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    adj
}

fn paths_of_length(
    adj: &[BTreeSet<usize>],
    path: &mut Vec<usize>,
    target: usize,
    remaining: usize,
    found: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    if remaining == 0 {
        if last == target {
            found.push(path.clone());
        }
        return;
    }
    for &next in &adj[last] {
        if !path.contains(&next) {
            path.push(next);
            paths_of_length(adj, path, target, remaining - 1, found);
            path.pop();
        }
    }
}

/// Every shortest path from `s` to `t`, found by trying lengths 1, 2, … and
/// stopping at the first length with any path. Empty when unreachable.
pub fn all_geodesics(adj: &[BTreeSet<usize>], s: usize, t: usize) -> Vec<Vec<usize>> {
    for len in 1..adj.len() {
        let mut found = Vec::new();
        paths_of_length(adj, &mut vec![s], t, len, &mut found);
        if !found.is_empty() {
            return found;
        }
    }
    Vec::new()
}

/// Pair-sum betweenness by explicit enumeration of all geodesics.
pub fn betweenness_by_enumeration(g: &Multigraph) -> Vec<f64> {
    let adj = adjacency(g);
    let n = adj.len();
    let mut out = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let paths = all_geodesics(&adj, s, t);
            if paths.is_empty() {
                continue;
            }
            for path in &paths {
                for &i in &path[1..path.len() - 1] {
                    out[i] += 1.0 / paths.len() as f64;
                }
            }
        }
    }
    out
}

fn components(adj: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for start in 0..adj.len() {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Dominant eigenvector of the adjacency matrix restricted to `support`
/// (absolute values, summing to 1), from a dense symmetric decomposition.
pub fn dense_eigenvector(g: &Multigraph, support: &[usize]) -> (Vec<f64>, f64) {
    let adj = adjacency(g);
    let k = support.len();
    let mut a = DMatrix::<f64>::zeros(k, k);
    for (i, &u) in support.iter().enumerate() {
        for (j, &v) in support.iter().enumerate() {
            if adj[u].contains(&v) {
                a[(i, j)] = 1.0;
            }
        }
    }
    let eig = SymmetricEigen::new(a);
    let (top, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    let vec = eig.eigenvectors.column(top);
    let sum: f64 = vec.iter().map(|x| x.abs()).sum();
    let mut out = vec![0.0; g.node_count()];
    for (i, &u) in support.iter().enumerate() {
        out[u] = vec[i].abs() / sum;
    }
    (out, lambda)
}

/// Coreness as the largest minimum induced degree over all node subsets
/// containing the node. Exponential; small graphs only.
pub fn coreness_by_subsets(g: &Multigraph) -> Vec<usize> {
    let adj = adjacency(g);
    let n = adj.len();
    assert!(n <= 16, "subset oracle is exponential");
    let mut best = vec![0usize; n];
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let min_degree = members
            .iter()
            .map(|&v| adj[v].iter().filter(|&&w| mask & (1 << w) != 0).count())
            .min()
            .unwrap();
        for &v in &members {
            best[v] = best[v].max(min_degree);
        }
    }
    best
}

/// Node sets of the connected pieces of the k-core, found by exhaustive
/// search for the largest subset with minimum degree ≥ k.
pub fn kcore_pieces_by_subsets(g: &Multigraph, k: usize) -> Vec<Vec<usize>> {
    let adj = adjacency(g);
    let n = adj.len();
    let mut union = 0u32;
    for mask in 1u32..(1 << n) {
        let ok = (0..n)
            .filter(|&v| mask & (1 << v) != 0)
            .all(|v| adj[v].iter().filter(|&&w| mask & (1 << w) != 0).count() >= k);
        if ok {
            union |= mask;
        }
    }
    let restricted: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| {
            if union & (1 << v) == 0 {
                BTreeSet::new()
            } else {
                adj[v].iter().copied().filter(|&w| union & (1 << w) != 0).collect()
            }
        })
        .collect();
    let mut pieces: Vec<Vec<usize>> = components(&restricted)
        .into_iter()
        .filter(|c| union & (1 << c[0]) != 0)
        .collect();
    pieces.sort();
    pieces
}

/// Current-flow betweenness by solving, for every source–sink pair, the
/// Kirchhoff system with the sink grounded.
pub fn current_flow_by_solves(g: &Multigraph) -> Vec<f64> {
    let adj = adjacency(g);
    let n = adj.len();
    let mut out = vec![0.0; n];
    for comp in components(&adj) {
        if comp.len() < 3 {
            continue;
        }
        for (si, &s) in comp.iter().enumerate() {
            for &t in &comp[si + 1..] {
                let others: Vec<usize> = comp.iter().copied().filter(|&v| v != t).collect();
                let k = others.len();
                let mut l = DMatrix::<f64>::zeros(k, k);
                let mut rhs = DVector::<f64>::zeros(k);
                for (i, &u) in others.iter().enumerate() {
                    l[(i, i)] = adj[u].len() as f64;
                    for (j, &w) in others.iter().enumerate() {
                        if adj[u].contains(&w) {
                            l[(i, j)] = -1.0;
                        }
                    }
                    if u == s {
                        rhs[i] = 1.0;
                    }
                }
                let solved = l.lu().solve(&rhs).expect("grounded Laplacian is regular");
                let mut potential = vec![0.0; n];
                for (i, &u) in others.iter().enumerate() {
                    potential[u] = solved[i];
                }
                for &i in &comp {
                    if i == s || i == t {
                        continue;
                    }
                    let through: f64 = adj[i].iter().map(|&j| (potential[i] - potential[j]).abs()).sum();
                    out[i] += through / 2.0;
                }
            }
        }
    }
    out
}

/// Expected hitting times of a simple random walk to `target`, by solving
/// `h(t) = 0`, `h(s) = 1 + mean over neighbors of h`.
pub fn hitting_times_to(adj: &[BTreeSet<usize>], comp: &[usize], target: usize) -> Vec<(usize, f64)> {
    let others: Vec<usize> = comp.iter().copied().filter(|&v| v != target).collect();
    let k = others.len();
    let mut a = DMatrix::<f64>::zeros(k, k);
    let b = DVector::<f64>::from_element(k, 1.0);
    for (i, &u) in others.iter().enumerate() {
        a[(i, i)] = 1.0;
        let deg = adj[u].len() as f64;
        for (j, &w) in others.iter().enumerate() {
            if adj[u].contains(&w) {
                a[(i, j)] -= 1.0 / deg;
            }
        }
    }
    let h = a.lu().solve(&b).expect("absorbing chain is regular");
    others.into_iter().zip(h.iter().copied()).collect()
}

/// `(n − 1) / Σ_s H(s → t)` per component; isolated nodes 0.
pub fn rw_closeness_by_solves(g: &Multigraph) -> Vec<f64> {
    let adj = adjacency(g);
    let mut out = vec![0.0; adj.len()];
    for comp in components(&adj) {
        if comp.len() < 2 {
            continue;
        }
        for &t in &comp {
            let total: f64 = hitting_times_to(&adj, &comp, t).iter().map(|p| p.1).sum();
            out[t] = (comp.len() as f64 - 1.0) / total;
        }
    }
    out
}
