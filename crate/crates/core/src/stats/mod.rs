//! Distributional and comparative statistics over graphs and metric frames.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::build::{GroupKey, Partition};
use crate::graph::{connected_components, geodesic_stats, ClusterMetricsRow, Multigraph};
use crate::metrics::{Metric, MetricFrame, MetricsError};

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("need at least two columns, got {0}")]
    TooFewColumns(usize),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("class {0:?} has no members")]
    EmptyClass(String),
    #[error("partition covers {found} nodes, frame has {expected}")]
    PartitionSize { expected: usize, found: usize },
    #[error("columns have different lengths")]
    LengthMismatch,
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DegreeDistribution {
    /// Degree to node count.
    pub histogram: BTreeMap<usize, usize>,
    /// `(ln degree, ln count)` for every non-empty cell with degree ≥ 1.
    pub loglog_points: Vec<(f64, f64)>,
}

impl DegreeDistribution {
    pub fn from_degrees(degrees: impl IntoIterator<Item = usize>) -> Self {
        let mut histogram = BTreeMap::new();
        for d in degrees {
            *histogram.entry(d).or_insert(0) += 1;
        }
        let loglog_points = histogram
            .iter()
            .filter(|(&d, &c)| d >= 1 && c >= 1)
            .map(|(&d, &c)| ((d as f64).ln(), (c as f64).ln()))
            .collect();
        DegreeDistribution {
            histogram,
            loglog_points,
        }
    }

    pub fn total(&self) -> usize {
        self.histogram.values().sum()
    }

    pub fn max_degree(&self) -> usize {
        self.histogram.keys().next_back().copied().unwrap_or(0)
    }

    fn sorted_degrees(&self) -> Vec<usize> {
        self.histogram
            .iter()
            .flat_map(|(&d, &c)| std::iter::repeat_n(d, c))
            .collect()
    }

    /// Lower median.
    pub fn median_degree(&self) -> usize {
        let sorted = self.sorted_degrees();
        if sorted.is_empty() {
            0
        } else {
            sorted[(sorted.len() - 1) / 2]
        }
    }

    /// Share of the total degree held by the top `fraction` of nodes
    /// (at least one node). Zero on an edgeless graph.
    pub fn tail_mass(&self, fraction: f64) -> f64 {
        let sorted = self.sorted_degrees();
        let total: usize = sorted.iter().sum();
        if total == 0 {
            return 0.0;
        }
        let take = ((sorted.len() as f64 * fraction).ceil() as usize).clamp(1, sorted.len());
        let top: usize = sorted.iter().rev().take(take).sum();
        top as f64 / total as f64
    }
}

/// Histogram of distinct-neighbor degrees.
pub fn degree_distribution(graph: &Multigraph) -> DegreeDistribution {
    DegreeDistribution::from_degrees((0..graph.node_count()).map(|v| graph.degree(v)))
}

/// A named numeric column. `NaN` marks a missing value; such rows are
/// skipped pairwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

impl Column {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Column {
            name: name.into(),
            values,
        }
    }
}

/// Pearson coefficient over the rows where both values are present.
/// `None` with fewer than two such rows or zero variance on either side.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let pairs: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| !a.is_nan() && !b.is_nan())
        .map(|(&a, &b)| (a, b))
        .collect();
    if pairs.len() < 2 {
        return None;
    }
    let n = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(a, b) in &pairs {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    let scale = (sxx * syy).sqrt();
    if sxx <= f64::EPSILON * n * mx.abs().max(1.0) || syy <= f64::EPSILON * n * my.abs().max(1.0) || scale == 0.0 {
        return None;
    }
    Some((sxy / scale).clamp(-1.0, 1.0))
}

/// Symmetric coefficient matrix; `None` cells print as `-`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub names: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
}

impl CorrelationMatrix {
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i][j]
    }
}

pub fn correlate_columns(columns: &[Column]) -> Result<CorrelationMatrix, StatsError> {
    if let Some(first) = columns.first() {
        if columns.iter().any(|c| c.values.len() != first.values.len()) {
            return Err(StatsError::LengthMismatch);
        }
    }
    let k = columns.len();
    let mut values = vec![vec![None; k]; k];
    for i in 0..k {
        let defined = pearson(&columns[i].values, &columns[i].values).is_some();
        values[i][i] = defined.then_some(1.0);
        for j in i + 1..k {
            let r = pearson(&columns[i].values, &columns[j].values);
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        names: columns.iter().map(|c| c.name.clone()).collect(),
        values,
    })
}

pub fn correlation_matrix(frame: &MetricFrame, metrics: &[Metric]) -> Result<CorrelationMatrix, StatsError> {
    correlate_columns(&frame_columns(frame, metrics)?)
}

pub fn frame_columns(frame: &MetricFrame, metrics: &[Metric]) -> Result<Vec<Column>, StatsError> {
    metrics
        .iter()
        .map(|&m| Ok(Column::new(m.name(), frame.column(m)?)))
        .collect()
}

/// Numeric columns of a cluster table in codification order
/// N, UE, EwD, TE, MGD, AGD, D; undefined cells become `NaN`.
pub fn cluster_columns(rows: &[ClusterMetricsRow]) -> Vec<Column> {
    let col = |name: &str, f: &dyn Fn(&ClusterMetricsRow) -> f64| Column::new(name, rows.iter().map(f).collect());
    vec![
        col("N", &|r| r.nodes as f64),
        col("UE", &|r| r.unique_edges as f64),
        col("EwD", &|r| r.duplicate_edges as f64),
        col("TE", &|r| r.total_edges as f64),
        col("MGD", &|r| f64::from(r.diameter)),
        col("AGD", &|r| r.mean_geodesic.unwrap_or(f64::NAN)),
        col("D", &|r| r.density.unwrap_or(f64::NAN)),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupDeviationRow {
    pub label: String,
    pub size: usize,
    /// `(group mean − overall mean) / overall mean` per metric, as a
    /// fraction; `None` when the overall mean is zero.
    pub deviations: Vec<Option<f64>>,
}

impl GroupDeviationRow {
    pub fn percent(&self, i: usize) -> Option<f64> {
        self.deviations[i].map(|d| d * 100.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupDeviationTable {
    pub metrics: Vec<Metric>,
    pub rows: Vec<GroupDeviationRow>,
}

impl GroupDeviationTable {
    /// `Σ share·(1 + deviation)` for one metric; 1 up to rounding whenever
    /// the deviations are defined. `None` for an empty table.
    pub fn weighted_identity(&self, metric_index: usize) -> Option<f64> {
        let total: usize = self.rows.iter().map(|r| r.size).sum();
        if total == 0 {
            return None;
        }
        self.rows
            .iter()
            .map(|r| r.deviations[metric_index].map(|d| r.size as f64 / total as f64 * (1.0 + d)))
            .sum()
    }
}

/// Mean deviation of each class from the mean over the listed classes.
/// An empty `classes` slice means every class of the partition except
/// `unclassified`.
pub fn group_mean_deviation(
    frame: &MetricFrame,
    partition: &Partition,
    classes: &[String],
    metrics: &[Metric],
) -> Result<GroupDeviationTable, StatsError> {
    if partition.len() != frame.len() {
        return Err(StatsError::PartitionSize {
            expected: frame.len(),
            found: partition.len(),
        });
    }
    let groups = partition.groups();
    let selected: Vec<String> = if classes.is_empty() {
        groups
            .keys()
            .filter(|c| **c != crate::corpus::UNCLASSIFIED)
            .map(|c| c.to_string())
            .collect()
    } else {
        classes.to_vec()
    };
    let mut members = Vec::new();
    for class in &selected {
        match groups.get(class.as_str()) {
            Some(m) if !m.is_empty() => members.push((class.clone(), m.clone())),
            _ => return Err(StatsError::EmptyClass(class.clone())),
        }
    }
    let columns: Vec<Vec<f64>> = metrics.iter().map(|&m| frame.column(m)).collect::<Result<_, _>>()?;

    let total: usize = members.iter().map(|(_, m)| m.len()).sum();
    let overall: Vec<f64> = columns
        .iter()
        .map(|col| members.iter().flat_map(|(_, m)| m.iter().map(|&v| col[v])).sum::<f64>() / total as f64)
        .collect();
    let rows = members
        .into_iter()
        .map(|(label, m)| {
            let deviations = columns
                .iter()
                .zip(&overall)
                .map(|(col, &mean)| {
                    let group_mean = m.iter().map(|&v| col[v]).sum::<f64>() / m.len() as f64;
                    (mean != 0.0).then(|| (group_mean - mean) / mean)
                })
                .collect();
            GroupDeviationRow {
                label,
                size: m.len(),
                deviations,
            }
        })
        .collect();
    Ok(GroupDeviationTable {
        metrics: metrics.to_vec(),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmallWorldReport {
    pub nodes: usize,
    pub ln_nodes: f64,
    pub giant_nodes: usize,
    pub ln_giant: f64,
    pub giant_share_nodes: f64,
    /// Share of total edges (duplicates and loops included).
    pub giant_share_edges: f64,
    pub agd_giant: Option<f64>,
    pub mgd_giant: u32,
    pub verdict: String,
}

pub fn small_world_report(graph: &Multigraph) -> SmallWorldReport {
    let g = graph.node_count();
    let components = connected_components(graph);
    let giant_members = components.components.first().cloned().unwrap_or_default();
    let giant = graph.induced_subgraph(&giant_members).expect("component nodes exist");
    let total_edges = graph.edge_counts().total;
    let stats = geodesic_stats(&giant);
    let ln = |n: usize| if n == 0 { f64::NAN } else { (n as f64).ln() };
    let ratio = |x: f64| if x > 0.0 { stats.mean.map(|a| a / x) } else { None };
    let verdict = match (ratio(ln(g)), ratio(ln(giant_members.len()))) {
        (Some(a), Some(b)) => format!("AGD/ln(g) = {a:.3}, AGD/ln(giant) = {b:.3}"),
        _ => "AGD undefined or ln size zero".to_string(),
    };
    SmallWorldReport {
        nodes: g,
        ln_nodes: ln(g),
        giant_nodes: giant_members.len(),
        ln_giant: ln(giant_members.len()),
        giant_share_nodes: if g == 0 { 0.0 } else { giant_members.len() as f64 / g as f64 },
        giant_share_edges: if total_edges == 0 {
            0.0
        } else {
            giant.edge_counts().total as f64 / total_edges as f64
        },
        agd_giant: stats.mean,
        mgd_giant: stats.diameter,
        verdict,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopRow {
    pub id: String,
    pub label: String,
    pub degree: usize,
    pub value: f64,
    pub affiliation: String,
}

/// Highest-scoring nodes by `metric`, ties broken by ascending node id.
/// `filter` keeps only nodes whose group label under the key matches.
pub fn top_k(
    frame: &MetricFrame,
    metric: Metric,
    k: usize,
    filter: Option<(GroupKey, &str)>,
) -> Result<Vec<TopRow>, StatsError> {
    if k == 0 {
        return Err(StatsError::ZeroK);
    }
    let values = frame.column(metric)?;
    let mut rows: Vec<TopRow> = frame
        .rows()
        .iter()
        .zip(values)
        .filter(|(row, _)| filter.is_none_or(|(key, label)| key.label_for(&row.node) == label))
        .map(|(row, value)| TopRow {
            id: row.node.id.clone(),
            label: row.node.label.clone(),
            degree: row.metrics.degree,
            value,
            affiliation: row.node.affiliation.clone().unwrap_or_default(),
        })
        .collect();
    rows.sort_by(|a, b| b.value.total_cmp(&a.value).then_with(|| a.id.cmp(&b.id)));
    rows.truncate(k);
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterPanel {
    pub x: String,
    pub y: String,
    pub points: Vec<(f64, f64)>,
    /// Either axis is constant.
    pub degenerate: bool,
}

/// One panel per unordered column pair, in column order.
pub fn scatter_panels(columns: &[Column]) -> Result<Vec<ScatterPanel>, StatsError> {
    if columns.len() < 2 {
        return Err(StatsError::TooFewColumns(columns.len()));
    }
    let constant = |c: &Column| c.values.windows(2).all(|w| w[0] == w[1]);
    let mut panels = Vec::new();
    for i in 0..columns.len() {
        for j in i + 1..columns.len() {
            let (a, b) = (&columns[i], &columns[j]);
            if a.values.len() != b.values.len() {
                return Err(StatsError::LengthMismatch);
            }
            panels.push(ScatterPanel {
                x: a.name.clone(),
                y: b.name.clone(),
                points: a.values.iter().copied().zip(b.values.iter().copied()).collect(),
                degenerate: constant(a) || constant(b),
            });
        }
    }
    Ok(panels)
}

pub fn scatter_matrix_data(frame: &MetricFrame, metrics: &[Metric]) -> Result<Vec<ScatterPanel>, StatsError> {
    scatter_panels(&frame_columns(frame, metrics)?)
}

/// Ordinary least-squares slope; `None` with fewer than two points or a
/// constant x.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
