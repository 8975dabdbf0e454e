//! Network construction from a corpus, group partitions and per-group
//! cluster metrics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::{CanonicalName, Corpus, Gender, JelCode, UNCLASSIFIED};
use crate::graph::{cluster_row, ClusterMetricsRow, Multigraph, NodeData, NodeId};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("invalid year window {start}:{end}")]
    InvalidWindow { start: i32, end: i32 },
    #[error("year windows {0} and {1} overlap")]
    OverlappingWindows(String, String),
    #[error("empty partition class {0:?}")]
    EmptyClass(String),
    #[error("partition covers {found} nodes, graph has {expected}")]
    PartitionSize { expected: usize, found: usize },
    #[error("unknown group key {0:?}")]
    UnknownKey(String),
}

/// Inclusive range of meeting years.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YearWindow {
    pub start: i32,
    pub end: i32,
}

impl YearWindow {
    pub fn new(start: i32, end: i32) -> Result<Self, BuildError> {
        if start > end {
            return Err(BuildError::InvalidWindow { start, end });
        }
        Ok(YearWindow { start, end })
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.start..=self.end).contains(&year)
    }

    pub fn range(&self) -> RangeInclusive<i32> {
        self.start..=self.end
    }
}

impl fmt::Display for YearWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.end)
    }
}

impl FromStr for YearWindow {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected START:END, got {s:?}"))?;
        let start = a.trim().parse().map_err(|_| format!("invalid year {a:?}"))?;
        let end = b.trim().parse().map_err(|_| format!("invalid year {b:?}"))?;
        YearWindow::new(start, end).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Default)]
pub struct CoauthorOptions {
    pub window: Option<YearWindow>,
    /// Keep only authors of this gender and the edges among them.
    pub gender: Option<Gender>,
    /// Add authors without any coauthored paper in the window as isolates.
    pub include_single_authors: bool,
}

/// Coauthorship multigraph: each k-author paper adds all `k(k−1)/2` pairs,
/// multiplicities accumulating across papers. Nodes are ordered by canonical
/// key; ids are the keys, labels the display names.
pub fn build_coauthor(corpus: &Corpus, options: &CoauthorOptions) -> Multigraph {
    let in_window = |year: i32| options.window.is_none_or(|w| w.contains(year));
    let keep = |name: &CanonicalName| match options.gender {
        None => true,
        Some(g) => corpus.author(name).is_some_and(|r| r.gender == g),
    };

    let mut members: BTreeSet<&CanonicalName> = BTreeSet::new();
    for entry in corpus.entries().iter().filter(|e| in_window(e.year)) {
        if entry.is_coauthored() || options.include_single_authors {
            members.extend(entry.authors.iter().filter(|a| keep(a)));
        }
    }

    let mut graph = Multigraph::new();
    let mut index: BTreeMap<&CanonicalName, NodeId> = BTreeMap::new();
    for name in members {
        let record = corpus.author(name);
        let node = NodeData {
            id: name.key().to_string(),
            label: record
                .map(|r| r.canonical_name.display().to_string())
                .unwrap_or_else(|| name.display().to_string()),
            gender: Some(record.map(|r| r.gender).unwrap_or_default()),
            affiliation: Some(
                record
                    .map(|r| r.affiliation.clone())
                    .unwrap_or_else(|| UNCLASSIFIED.to_string()),
            ),
        };
        index.insert(name, graph.add_node(node).expect("canonical keys are unique"));
    }

    for entry in corpus.entries().iter().filter(|e| in_window(e.year) && e.is_coauthored()) {
        let ids: Vec<NodeId> = entry.authors.iter().filter_map(|a| index.get(a).copied()).collect();
        for (i, &u) in ids.iter().enumerate() {
            for &v in &ids[i + 1..] {
                graph.add_edge(u, v, 1).expect("nodes were added above");
            }
        }
    }
    graph
}

/// One coauthorship graph per window. Windows must not overlap.
pub fn window_series(
    corpus: &Corpus,
    windows: &[YearWindow],
    options: &CoauthorOptions,
) -> Result<Vec<Multigraph>, BuildError> {
    let mut sorted: Vec<&YearWindow> = windows.iter().collect();
    sorted.sort_by_key(|w| w.start);
    for pair in sorted.windows(2) {
        if pair[0].end >= pair[1].start {
            return Err(BuildError::OverlappingWindows(pair[0].to_string(), pair[1].to_string()));
        }
    }
    Ok(windows
        .iter()
        .map(|&w| {
            let opts = CoauthorOptions {
                window: Some(w),
                ..options.clone()
            };
            build_coauthor(corpus, &opts)
        })
        .collect())
}

/// Decade windows from the 1960s to the 2000s plus 2010–2014.
pub fn decade_windows() -> Vec<YearWindow> {
    let mut out: Vec<YearWindow> = (196..=200)
        .map(|d| YearWindow::new(d * 10, d * 10 + 9).unwrap())
        .collect();
    out.push(YearWindow::new(2010, 2014).unwrap());
    out
}

#[derive(Debug, Clone, Default)]
pub struct JelOptions {
    /// Restrict to papers with two or more authors.
    pub coauthored_only: bool,
}

/// Where the self-loops of a JEL network came from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct JelLoopLog {
    pub single_code_papers: usize,
    pub identical_pair_papers: usize,
}

/// Thematic network: codes are nodes; a paper tagged `{x, y}` links x and y,
/// a paper with one code (or the same code twice) adds a self-loop.
pub fn build_jel(corpus: &Corpus, options: &JelOptions) -> (Multigraph, JelLoopLog) {
    let papers: Vec<_> = corpus
        .entries()
        .iter()
        .filter(|e| !options.coauthored_only || e.is_coauthored())
        .collect();
    let codes: BTreeSet<&JelCode> = papers.iter().flat_map(|e| e.jel.iter()).collect();
    let mut graph = Multigraph::with_nodes(codes.iter().map(|c| NodeData::new(c.as_str())))
        .expect("codes are unique");

    let mut log = JelLoopLog::default();
    for entry in papers {
        let u = graph.find(entry.jel[0].as_str()).unwrap();
        let v = match entry.jel.get(1) {
            Some(code) => {
                let v = graph.find(code.as_str()).unwrap();
                if u == v {
                    log.identical_pair_papers += 1;
                }
                v
            }
            None => {
                log.single_code_papers += 1;
                u
            }
        };
        graph.add_edge(u, v, 1).unwrap();
    }
    if log.single_code_papers + log.identical_pair_papers > 0 {
        log::debug!(
            "JEL self-loops: {} single-code papers, {} identical-pair papers",
            log.single_code_papers,
            log.identical_pair_papers
        );
    }
    (graph, log)
}

/// Node attribute used to group nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKey {
    Affiliation,
    JelFirstLetter,
    Gender,
}

impl GroupKey {
    /// Group label for a node; a missing attribute maps to `unclassified`.
    pub fn label_for(self, node: &NodeData) -> String {
        let label = match self {
            GroupKey::Affiliation => node.affiliation.clone(),
            GroupKey::Gender => match node.gender {
                Some(Gender::Unknown) | None => None,
                Some(g) => Some(g.as_str().to_string()),
            },
            GroupKey::JelFirstLetter => JelCode::new(&node.id).ok().map(|c| c.first_letter().to_string()),
        };
        label.filter(|l| !l.is_empty()).unwrap_or_else(|| UNCLASSIFIED.to_string())
    }
}

impl FromStr for GroupKey {
    type Err = BuildError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "affiliation" | "affil" => Ok(GroupKey::Affiliation),
            "jel" | "jel_first_letter" | "letter" => Ok(GroupKey::JelFirstLetter),
            "gender" => Ok(GroupKey::Gender),
            other => Err(BuildError::UnknownKey(other.to_string())),
        }
    }
}

/// Total assignment of nodes to group labels. Classes may be declared
/// without members; such classes are rejected by [`cluster_metrics`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<String>,
    classes: BTreeSet<String>,
}

impl Partition {
    pub fn from_labels(assignment: Vec<String>) -> Self {
        let classes = assignment.iter().cloned().collect();
        Partition { assignment, classes }
    }

    /// Adds declared classes that may have no members.
    pub fn with_classes(mut self, extra: impl IntoIterator<Item = String>) -> Self {
        self.classes.extend(extra);
        self
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.assignment[node]
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn classes(&self) -> impl Iterator<Item = &str> {
        self.classes.iter().map(String::as_str)
    }

    /// Members per class, in label order.
    pub fn groups(&self) -> BTreeMap<&str, Vec<NodeId>> {
        let mut groups: BTreeMap<&str, Vec<NodeId>> =
            self.classes.iter().map(|c| (c.as_str(), Vec::new())).collect();
        for (v, label) in self.assignment.iter().enumerate() {
            groups.get_mut(label.as_str()).unwrap().push(v);
        }
        groups
    }
}

pub fn group_partition(graph: &Multigraph, key: GroupKey) -> Partition {
    Partition::from_labels(graph.nodes().iter().map(|n| key.label_for(n)).collect())
}

fn check_partition(graph: &Multigraph, partition: &Partition) -> Result<(), BuildError> {
    if partition.len() != graph.node_count() {
        return Err(BuildError::PartitionSize {
            expected: graph.node_count(),
            found: partition.len(),
        });
    }
    Ok(())
}

/// Induced-subgraph metrics per group, sorted by node count descending and
/// then by label.
pub fn cluster_metrics(
    graph: &Multigraph,
    partition: &Partition,
) -> Result<Vec<ClusterMetricsRow>, BuildError> {
    check_partition(graph, partition)?;
    let mut rows = Vec::new();
    for (label, members) in partition.groups() {
        if members.is_empty() {
            return Err(BuildError::EmptyClass(label.to_string()));
        }
        let sub = graph.induced_subgraph(&members).expect("members exist");
        rows.push(cluster_row(label, &sub));
    }
    rows.sort_by(|a, b| b.nodes.cmp(&a.nodes).then_with(|| a.label.cmp(&b.label)));
    Ok(rows)
}

/// Edges (with multiplicity) split into within-group and across-group.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeMix {
    /// Per group: (intra, extra). An across-group edge counts once for each
    /// endpoint's group.
    pub per_group: BTreeMap<String, (usize, usize)>,
    /// Symmetric group-pair counts; the diagonal holds intra counts.
    pub matrix: BTreeMap<(String, String), usize>,
}

impl EdgeMix {
    pub fn intra_total(&self) -> usize {
        self.per_group.values().map(|(i, _)| i).sum()
    }

    pub fn extra_total(&self) -> usize {
        self.per_group.values().map(|(_, e)| e).sum::<usize>() / 2
    }

    pub fn pair(&self, a: &str, b: &str) -> usize {
        self.matrix.get(&(a.to_string(), b.to_string())).copied().unwrap_or(0)
    }
}

pub fn intra_extra_edges(graph: &Multigraph, partition: &Partition) -> Result<EdgeMix, BuildError> {
    check_partition(graph, partition)?;
    let mut mix = EdgeMix::default();
    for class in partition.classes() {
        mix.per_group.insert(class.to_string(), (0, 0));
    }
    for (u, v, m) in graph.edges() {
        let m = m as usize;
        let (a, b) = (partition.label(u), partition.label(v));
        if a == b {
            mix.per_group.get_mut(a).unwrap().0 += m;
            *mix.matrix.entry((a.to_string(), a.to_string())).or_insert(0) += m;
        } else {
            mix.per_group.get_mut(a).unwrap().1 += m;
            mix.per_group.get_mut(b).unwrap().1 += m;
            *mix.matrix.entry((a.to_string(), b.to_string())).or_insert(0) += m;
            *mix.matrix.entry((b.to_string(), a.to_string())).or_insert(0) += m;
        }
    }
    Ok(mix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{normalize_name, AuthorRecord, PaperEntry};
    use crate::graph::geodesic_stats;

    fn paper(id: &str, year: i32, authors: &[&str], jel: &[&str]) -> PaperEntry {
        PaperEntry {
            paper_id: id.into(),
            year,
            title: String::new(),
            authors: authors.iter().map(|a| normalize_name(a).unwrap()).collect(),
            affiliations: Vec::new(),
            jel: jel.iter().map(|c| JelCode::new(c).unwrap()).collect(),
        }
    }

    fn corpus_with(entries: Vec<PaperEntry>, genders: &[(&str, Gender, &str)]) -> Corpus {
        let mut dir = BTreeMap::new();
        for e in &entries {
            for a in &e.authors {
                dir.insert(a.clone(), AuthorRecord::unclassified(a.clone()));
            }
        }
        for &(name, gender, affil) in genders {
            let n = normalize_name(name).unwrap();
            dir.insert(
                n.clone(),
                AuthorRecord {
                    canonical_name: n,
                    gender,
                    affiliation: affil.into(),
                },
            );
        }
        Corpus::new(entries, dir).unwrap()
    }

    #[test]
    fn three_author_paper_is_triangle() {
        let c = corpus_with(vec![paper("1", 2000, &["A", "B", "C"], &["C2"])], &[]);
        let g = build_coauthor(&c, &CoauthorOptions::default());
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_counts().unique, 3);
    }

    #[test]
    fn seven_author_paper_is_k7() {
        let names = ["A", "B", "C", "D", "E", "F", "G"];
        let c = corpus_with(vec![paper("1", 2000, &names, &["C2"])], &[]);
        let g = build_coauthor(&c, &CoauthorOptions::default());
        assert_eq!(g.edge_counts().unique, 21);
        assert!((0..7).all(|v| g.degree(v) == 6));
    }

    #[test]
    fn repeat_pair_duplicates() {
        let c = corpus_with(
            vec![
                paper("1", 2000, &["A", "B"], &["C2"]),
                paper("2", 2001, &["B", "A"], &["C2"]),
                paper("3", 2001, &["C"], &["C2"]),
            ],
            &[],
        );
        let g = build_coauthor(&c, &CoauthorOptions::default());
        let counts = g.edge_counts();
        assert_eq!((counts.unique, counts.duplicates, counts.total), (1, 1, 2));
        assert_eq!(g.node_count(), 2, "single authors are excluded by default");
        let with_singles = build_coauthor(
            &c,
            &CoauthorOptions {
                include_single_authors: true,
                ..Default::default()
            },
        );
        assert_eq!(with_singles.node_count(), 3);
    }

    #[test]
    fn four_row_fixture() {
        // A and B coauthor twice; B-C once; D writes alone.
        let c = corpus_with(
            vec![
                paper("1", 1999, &["A", "B"], &["C2", "I3"]),
                paper("2", 2000, &["A", "B"], &["C2"]),
                paper("3", 2001, &["B", "C"], &["E3", "I3"]),
                paper("4", 2002, &["D"], &["Q1", "C2"]),
            ],
            &[],
        );
        let counts = build_coauthor(&c, &CoauthorOptions::default()).edge_counts();
        assert_eq!((counts.unique, counts.duplicates, counts.total), (2, 1, 3));
    }

    #[test]
    fn gender_filter_keeps_same_gender_edges() {
        let c = corpus_with(
            vec![
                paper("1", 2000, &["F1", "F2", "M1"], &["C2"]),
                paper("2", 2000, &["M1", "M2"], &["C2"]),
                paper("3", 2000, &["U1", "F1"], &["C2"]),
            ],
            &[
                ("F1", Gender::Female, "UNS"),
                ("F2", Gender::Female, "UNS"),
                ("M1", Gender::Male, "UNS"),
                ("M2", Gender::Male, "UNS"),
            ],
        );
        let full = build_coauthor(&c, &CoauthorOptions::default());
        let female = build_coauthor(
            &c,
            &CoauthorOptions {
                gender: Some(Gender::Female),
                ..Default::default()
            },
        );
        let male = build_coauthor(
            &c,
            &CoauthorOptions {
                gender: Some(Gender::Male),
                ..Default::default()
            },
        );
        assert_eq!(female.node_count(), 2);
        assert_eq!(female.edge_counts().unique, 1);
        assert_eq!(male.edge_counts().unique, 1);
        assert!(female.node_count() + male.node_count() < full.node_count());
    }

    #[test]
    fn windows() {
        let c = corpus_with(
            vec![
                paper("1", 1995, &["A", "B"], &["C2"]),
                paper("2", 2003, &["B", "C"], &["C2"]),
            ],
            &[],
        );
        let series = window_series(&c, &decade_windows(), &CoauthorOptions::default()).unwrap();
        assert_eq!(series.len(), 6);
        assert!(series[0].is_empty());
        assert_eq!(series[3].node_count(), 2);
        assert_eq!(series[4].node_count(), 2);

        let overlapping = [YearWindow::new(1990, 1999).unwrap(), YearWindow::new(1995, 2000).unwrap()];
        assert!(matches!(
            window_series(&c, &overlapping, &CoauthorOptions::default()),
            Err(BuildError::OverlappingWindows(..))
        ));
        assert!("2000:1990".parse::<YearWindow>().is_err());
        assert_eq!("1990:1999".parse::<YearWindow>().unwrap(), YearWindow::new(1990, 1999).unwrap());
    }

    #[test]
    fn jel_path_and_loops() {
        let c = corpus_with(
            vec![
                paper("1", 2000, &["A"], &["C2", "I3"]),
                paper("2", 2000, &["A"], &["C2", "Q1"]),
                paper("3", 2000, &["A"], &["E3"]),
                paper("4", 2000, &["A"], &["E3", "E3"]),
            ],
            &[],
        );
        let (g, log) = build_jel(&c, &JelOptions::default());
        assert_eq!(g.node_count(), 4);
        let c2 = g.find("C2").unwrap();
        let mut nbrs: Vec<&str> = g.neighbors(c2).iter().map(|&v| g.node(v).id.as_str()).collect();
        nbrs.sort();
        assert_eq!(nbrs, ["I3", "Q1"]);
        let e3 = g.find("E3").unwrap();
        assert_eq!(g.multiplicity(e3, e3), 2);
        assert_eq!(log, JelLoopLog { single_code_papers: 1, identical_pair_papers: 1 });
        assert_eq!(g.edge_counts().self_loops, 1);
    }

    #[test]
    fn jel_coauthored_only() {
        let c = corpus_with(
            vec![paper("1", 2000, &["A"], &["C2", "I3"]), paper("2", 2000, &["A", "B"], &["Q1"])],
            &[],
        );
        let (g, _) = build_jel(&c, &JelOptions { coauthored_only: true });
        assert_eq!(g.node_count(), 1);
    }

    #[test]
    fn jel_aggregate_fixture() {
        let (g, _) = build_jel(&crate::fixtures::jel_aggregate_corpus(), &JelOptions::default());
        assert_eq!(g.node_count(), 109);
        let counts = g.edge_counts();
        assert_eq!((counts.unique, counts.self_loops), (417, 34));
        assert_eq!(counts.unique_with_loops(), 451);
        assert_eq!(crate::graph::connected_components(&g).len(), 1);
        assert_eq!(geodesic_stats(&g).diameter, 6);
    }

    #[test]
    fn first_letter_groups() {
        let g = Multigraph::with_nodes(["C1", "C2", "D3"].map(NodeData::new)).unwrap();
        let groups = group_partition(&g, GroupKey::JelFirstLetter);
        let map = groups.groups();
        assert_eq!(map["C"], [0, 1]);
        assert_eq!(map["D"], [2]);
    }

    #[test]
    fn affiliation_groups_and_unclassified() {
        let mut nodes: Vec<NodeData> = ["a", "b", "c"].map(NodeData::new).to_vec();
        nodes[0].affiliation = Some("UNS".into());
        nodes[1].affiliation = Some("UNLP".into());
        let g = Multigraph::with_nodes(nodes).unwrap();
        let p = group_partition(&g, GroupKey::Affiliation);
        let labels: Vec<&str> = p.classes().collect();
        assert_eq!(labels, ["UNLP", "UNS", "unclassified"]);
    }

    #[test]
    fn dyad_with_isolates_metrics() {
        let g = Multigraph::from_edge_list(["a", "b", "c", "d"].map(NodeData::new), [("a", "b", 1)]).unwrap();
        let p = Partition::from_labels(vec!["x".into(); 4]);
        let rows = cluster_metrics(&g, &p).unwrap();
        let r = &rows[0];
        assert_eq!(
            (r.nodes, r.components, r.single_vertex_components, r.max_component_nodes, r.max_component_edges),
            (4, 3, 2, 2, 1)
        );
    }

    #[test]
    fn letter_cluster_of_seven() {
        // Seven codes, 11 links, 3 loops, diameter 2: the macro cluster shape.
        let ids = ["E0", "E1", "E2", "E3", "E4", "E5", "E6"];
        let mut pairs: Vec<(&str, &str, u32)> = (1..7).map(|i| (ids[0], ids[i], 1)).collect();
        pairs.extend([(ids[1], ids[2], 1), (ids[2], ids[3], 1), (ids[3], ids[4], 1), (ids[4], ids[5], 1), (ids[5], ids[6], 1)]);
        pairs.extend([(ids[1], ids[1], 1), (ids[3], ids[3], 1), (ids[5], ids[5], 1)]);
        let g = Multigraph::from_edge_list(ids.map(NodeData::new), pairs).unwrap();
        let rows = cluster_metrics(&g, &group_partition(&g, GroupKey::JelFirstLetter)).unwrap();
        let r = &rows[0];
        assert_eq!((r.nodes, r.total_edges, r.self_loops), (7, 14, 3));
        assert_eq!(
            (r.components, r.single_vertex_components, r.max_component_nodes, r.max_component_edges),
            (1, 0, 7, 14)
        );
        assert_eq!(r.diameter, 2);
        assert_eq!(format!("{:.2}", r.mean_geodesic.unwrap()), "1.27");
        assert_eq!(format!("{:.2}", r.density.unwrap()), "0.52");
    }

    #[test]
    fn empty_class_is_an_error() {
        let g = Multigraph::with_nodes([NodeData::new("a")]).unwrap();
        let p = Partition::from_labels(vec!["x".into()]).with_classes(["y".to_string()]);
        assert!(matches!(cluster_metrics(&g, &p), Err(BuildError::EmptyClass(ref c)) if c == "y"));
    }

    #[test]
    fn intra_extra_bookkeeping() {
        let g = Multigraph::from_edge_list(
            ["a", "b", "c", "d"].map(NodeData::new),
            [("a", "c", 2), ("b", "d", 1), ("a", "d", 1)],
        )
        .unwrap();
        let across = Partition::from_labels(["x", "x", "y", "y"].map(String::from).to_vec());
        let mix = intra_extra_edges(&g, &across).unwrap();
        assert!(mix.per_group.values().all(|(intra, _)| *intra == 0));
        assert_eq!(mix.pair("x", "y"), 4);
        assert_eq!(mix.pair("y", "x"), 4);

        let single = Partition::from_labels(vec!["x".into(); 4]);
        let mix = intra_extra_edges(&g, &single).unwrap();
        assert_eq!(mix.per_group["x"], (4, 0));
    }
}
