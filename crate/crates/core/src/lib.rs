//! Coauthorship and thematic network analysis.
//!
//! The crate turns bibliographic records (papers with authors, affiliations
//! and one or two JEL codes) into undirected multigraphs and computes the
//! usual battery of network diagnostics over them:
//!
//! - [`corpus`]: record ingestion, author directory, annotations, yearly
//!   counts and a seeded synthetic corpus generator.
//! - [`graph`]: the multigraph substrate with edge bookkeeping (unique,
//!   duplicate and self-loop edges), components, geodesics and density.
//! - [`build`]: coauthorship, windowed, gender-filtered and JEL networks,
//!   group partitions and per-group cluster metrics.
//! - [`metrics`]: degree, betweenness, closeness, eigenvector, PageRank,
//!   clustering, k-cores and random-walk (current-flow) centralities.
//! - [`stats`]: degree distributions, correlation matrices, group mean
//!   deviations, small-world diagnostics and top-k reports.
//! - [`cli`]: the command-line driver, table rendering and exporters.

pub mod build;
pub mod cli;
pub mod corpus;
pub mod fixtures;
pub mod graph;
pub mod metrics;
pub mod stats;

pub use build::{GroupKey, Partition};
pub use corpus::{AuthorRecord, CanonicalName, Corpus, Gender, JelCode, PaperEntry};
pub use graph::{ClusterMetricsRow, EdgeCounts, Multigraph, NodeData, NodeId};
pub use metrics::{Metric, MetricFrame};
