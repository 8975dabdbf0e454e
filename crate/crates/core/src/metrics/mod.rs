//! Per-node centralities, clustering, coreness and random-walk measures,
//! gathered into a [`MetricFrame`].

mod betweenness;
mod kcore;
mod local;
mod random_walk;
mod spectral;

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use csv::{ReaderBuilder, WriterBuilder};
use thiserror::Error;

use crate::build::{GroupKey, Partition};
use crate::corpus::Gender;
use crate::graph::{Multigraph, NodeData};

pub use betweenness::{betweenness, BetweennessScore, ShortestPathTally};
pub use kcore::{kcore, KCoreDecomposition};
pub use local::{closeness, clustering_coefficient, degree, DegreeScore};
pub use random_walk::{random_walk_centralities, rw_betweenness, rw_closeness, RandomWalkScores};
pub use spectral::{
    eigenvector, pagerank, EigenvectorResult, EIGEN_MAX_ITERATIONS, EIGEN_TOLERANCE,
    PAGERANK_MAX_ITERATIONS, PAGERANK_TOLERANCE,
};

pub const DEFAULT_DAMPING: f64 = 0.85;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("graph has no edge")]
    NoEdges,
    #[error("power iteration did not converge after {iterations} iterations")]
    NotConverged { iterations: usize },
    #[error("grounded Laplacian of a {size}-node component is not positive definite")]
    SingularLaplacian { size: usize },
    #[error("unknown metric {0:?}")]
    UnknownMetric(String),
    #[error("metric {0} was not computed for this frame")]
    MissingColumn(Metric),
    #[error("frame line {line}: {reason}")]
    Malformed { line: u64, reason: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Frame columns, in their fixed output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Degree,
    DegreeNorm,
    Betweenness,
    BetweennessNorm,
    Closeness,
    Eigenvector,
    PageRank,
    Clustering,
    Coreness,
    RwBetweenness,
    RwCloseness,
}

impl Metric {
    pub const ALL: [Metric; 11] = [
        Metric::Degree,
        Metric::DegreeNorm,
        Metric::Betweenness,
        Metric::BetweennessNorm,
        Metric::Closeness,
        Metric::Eigenvector,
        Metric::PageRank,
        Metric::Clustering,
        Metric::Coreness,
        Metric::RwBetweenness,
        Metric::RwCloseness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Degree => "degree",
            Metric::DegreeNorm => "degree_norm",
            Metric::Betweenness => "betweenness",
            Metric::BetweennessNorm => "betweenness_norm",
            Metric::Closeness => "closeness",
            Metric::Eigenvector => "eigenvector",
            Metric::PageRank => "pagerank",
            Metric::Clustering => "clustering",
            Metric::Coreness => "coreness",
            Metric::RwBetweenness => "rw_betweenness",
            Metric::RwCloseness => "rw_closeness",
        }
    }

    pub fn is_random_walk(self) -> bool {
        matches!(self, Metric::RwBetweenness | Metric::RwCloseness)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = MetricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_lowercase().replace('-', "_");
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == wanted)
            .ok_or_else(|| MetricsError::UnknownMetric(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NodeMetrics {
    pub degree: usize,
    pub degree_norm: f64,
    /// Unordered pair-sum betweenness.
    pub betweenness: f64,
    pub betweenness_norm: f64,
    pub closeness: f64,
    pub eigenvector: f64,
    pub pagerank: f64,
    pub clustering: f64,
    pub coreness: usize,
    pub rw_betweenness: Option<f64>,
    pub rw_closeness: Option<f64>,
}

impl NodeMetrics {
    pub fn get(&self, metric: Metric) -> Option<f64> {
        Some(match metric {
            Metric::Degree => self.degree as f64,
            Metric::DegreeNorm => self.degree_norm,
            Metric::Betweenness => self.betweenness,
            Metric::BetweennessNorm => self.betweenness_norm,
            Metric::Closeness => self.closeness,
            Metric::Eigenvector => self.eigenvector,
            Metric::PageRank => self.pagerank,
            Metric::Clustering => self.clustering,
            Metric::Coreness => self.coreness as f64,
            Metric::RwBetweenness => return self.rw_betweenness,
            Metric::RwCloseness => return self.rw_closeness,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrameRow {
    pub node: NodeData,
    pub metrics: NodeMetrics,
}

/// One row per node, in graph node order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricFrame {
    rows: Vec<FrameRow>,
    random_walk: bool,
}

impl MetricFrame {
    pub fn rows(&self) -> &[FrameRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn has_random_walk(&self) -> bool {
        self.random_walk
    }

    /// Columns present in this frame, in output order.
    pub fn metrics(&self) -> Vec<Metric> {
        Metric::ALL
            .into_iter()
            .filter(|m| self.random_walk || !m.is_random_walk())
            .collect()
    }

    pub fn column(&self, metric: Metric) -> Result<Vec<f64>, MetricsError> {
        if metric.is_random_walk() && !self.random_walk {
            return Err(MetricsError::MissingColumn(metric));
        }
        Ok(self
            .rows
            .iter()
            .map(|r| r.metrics.get(metric).unwrap_or(0.0))
            .collect())
    }

    pub fn partition(&self, key: GroupKey) -> Partition {
        Partition::from_labels(self.rows.iter().map(|r| key.label_for(&r.node)).collect())
    }

    /// Tab-separated table: node attributes, then metric columns in fixed
    /// order, values to six significant digits.
    pub fn write_tsv<W: Write>(&self, writer: W) -> Result<(), MetricsError> {
        let mut out = WriterBuilder::new().delimiter(b'\t').from_writer(writer);
        let mut header = vec!["id", "label", "gender", "affiliation"];
        let metrics = self.metrics();
        header.extend(metrics.iter().map(|m| m.name()));
        out.write_record(&header)?;
        for row in &self.rows {
            let mut record = vec![
                row.node.id.clone(),
                row.node.label.clone(),
                row.node.gender.map(|g| g.as_str().to_string()).unwrap_or_default(),
                row.node.affiliation.clone().unwrap_or_default(),
            ];
            for &m in &metrics {
                record.push(significant(row.metrics.get(m).unwrap_or(0.0), 6));
            }
            out.write_record(&record)?;
        }
        out.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn read_tsv<R: Read>(reader: R) -> Result<Self, MetricsError> {
        let mut input = ReaderBuilder::new().delimiter(b'\t').from_reader(reader);
        let header: Vec<String> = input.headers()?.iter().map(String::from).collect();
        let expected_base = ["id", "label", "gender", "affiliation"];
        let malformed = |line: u64, reason: String| MetricsError::Malformed { line, reason };
        if header.len() < 4 || header[..4] != expected_base {
            return Err(malformed(1, "expected id,label,gender,affiliation columns".into()));
        }
        let metrics: Vec<Metric> = header[4..].iter().map(|h| h.parse()).collect::<Result<_, _>>()?;
        let random_walk = metrics.iter().any(|m| m.is_random_walk());

        let mut rows = Vec::new();
        for record in input.records() {
            let record = record?;
            let line = record.position().map(|p| p.line()).unwrap_or(0);
            let gender = match &record[2] {
                "" => None,
                g => Some(g.parse::<Gender>().map_err(|e| malformed(line, e.to_string()))?),
            };
            let node = NodeData {
                id: record[0].to_string(),
                label: record[1].to_string(),
                gender,
                affiliation: Some(record[3].to_string()).filter(|a| !a.is_empty()),
            };
            let mut m = NodeMetrics::default();
            for (i, metric) in metrics.iter().enumerate() {
                let cell = record.get(4 + i).ok_or_else(|| malformed(line, "short row".into()))?;
                let value: f64 = cell
                    .parse()
                    .map_err(|_| malformed(line, format!("invalid number {cell:?}")))?;
                match metric {
                    Metric::Degree => m.degree = value as usize,
                    Metric::DegreeNorm => m.degree_norm = value,
                    Metric::Betweenness => m.betweenness = value,
                    Metric::BetweennessNorm => m.betweenness_norm = value,
                    Metric::Closeness => m.closeness = value,
                    Metric::Eigenvector => m.eigenvector = value,
                    Metric::PageRank => m.pagerank = value,
                    Metric::Clustering => m.clustering = value,
                    Metric::Coreness => m.coreness = value as usize,
                    Metric::RwBetweenness => m.rw_betweenness = Some(value),
                    Metric::RwCloseness => m.rw_closeness = Some(value),
                }
            }
            rows.push(FrameRow { node, metrics: m });
        }
        Ok(MetricFrame { rows, random_walk })
    }
}

/// Rounds to `digits` significant digits and prints the shortest decimal
/// form of the rounded value.
pub fn significant(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return if value.is_finite() { "0".into() } else { value.to_string() };
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), value).parse().unwrap();
    format!("{rounded}")
}

/// Every metric on one graph snapshot. Random-walk columns only when
/// `include_rw` is set.
pub fn metric_frame(graph: &Multigraph, include_rw: bool) -> Result<MetricFrame, MetricsError> {
    if graph.is_empty() {
        return Ok(MetricFrame {
            rows: Vec::new(),
            random_walk: include_rw,
        });
    }
    let degrees = degree(graph);
    let between = betweenness(graph);
    let close = closeness(graph);
    let eigen = eigenvector(graph)?;
    let rank = pagerank(graph, DEFAULT_DAMPING);
    let clustering = clustering_coefficient(graph);
    let cores = kcore(graph);
    let rw = if include_rw {
        Some(random_walk_centralities(graph)?)
    } else {
        None
    };

    let rows = (0..graph.node_count())
        .map(|v| FrameRow {
            node: graph.node(v).clone(),
            metrics: NodeMetrics {
                degree: degrees[v].raw,
                degree_norm: degrees[v].normalized,
                betweenness: between[v].pair_sum,
                betweenness_norm: between[v].normalized,
                closeness: close[v],
                eigenvector: eigen.scores[v],
                pagerank: rank[v],
                clustering: clustering[v],
                coreness: cores.coreness[v],
                rw_betweenness: rw.as_ref().map(|r| r.betweenness[v]),
                rw_closeness: rw.as_ref().map(|r| r.closeness[v]),
            },
        })
        .collect();
    Ok(MetricFrame {
        rows,
        random_walk: include_rw,
    })
}
