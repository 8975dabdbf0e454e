//! GraphML, DOT and edge-list export.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::Gender;
use crate::graph::{write_edge_list, write_node_sidecar, GraphError, Multigraph};
use crate::metrics::{significant, Metric, MetricFrame, NodeMetrics};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    GraphMl,
    Dot,
    EdgeCsv,
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graphml" => Ok(ExportFormat::GraphMl),
            "dot" => Ok(ExportFormat::Dot),
            "edges" | "edge_csv" => Ok(ExportFormat::EdgeCsv),
            other => Err(format!("unknown export format {other:?}")),
        }
    }
}

/// Paths of the edge list and node sidecar that make up a graph artifact.
pub fn artifact_paths(prefix: &Path) -> (PathBuf, PathBuf) {
    let with = |suffix: &str| {
        let mut name = prefix.as_os_str().to_owned();
        name.push(suffix);
        PathBuf::from(name)
    };
    (with(".edges.csv"), with(".nodes.csv"))
}

fn create(path: &Path) -> Result<BufWriter<File>, ExportError> {
    File::create(path).map(BufWriter::new).map_err(|source| ExportError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn io_at(path: &Path) -> impl Fn(io::Error) -> ExportError + '_ {
    move |source| ExportError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Writes `graph` to `path` and returns the files created. For
/// [`ExportFormat::EdgeCsv`] `path` is a prefix for the edge list and the
/// node sidecar; the sidecar does not carry metrics.
pub fn export_graph(
    graph: &Multigraph,
    frame: Option<&MetricFrame>,
    format: ExportFormat,
    path: &Path,
) -> Result<Vec<PathBuf>, ExportError> {
    match format {
        ExportFormat::EdgeCsv => {
            let (edges, nodes) = artifact_paths(path);
            write_edge_list(graph, create(&edges)?)?;
            write_node_sidecar(graph, create(&nodes)?)?;
            Ok(vec![edges, nodes])
        }
        ExportFormat::GraphMl | ExportFormat::Dot => {
            let mut out = create(path)?;
            if format == ExportFormat::GraphMl {
                write_graphml(graph, frame, &mut out)
            } else {
                write_dot(graph, frame, &mut out)
            }
            .and_then(|_| out.flush())
            .map_err(io_at(path))?;
            Ok(vec![path.to_path_buf()])
        }
    }
}

fn attached<'a>(graph: &Multigraph, frame: Option<&'a MetricFrame>) -> (Vec<Metric>, Vec<Option<&'a NodeMetrics>>) {
    let Some(frame) = frame else {
        return (Vec::new(), vec![None; graph.node_count()]);
    };
    let by_id: HashMap<&str, &NodeMetrics> = frame
        .rows()
        .iter()
        .map(|r| (r.node.id.as_str(), &r.metrics))
        .collect();
    let per_node = graph.nodes().iter().map(|n| by_id.get(n.id.as_str()).copied()).collect();
    (frame.metrics(), per_node)
}

fn xml_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn dot_quote(text: &str) -> String {
    format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn write_graphml<W: Write>(graph: &Multigraph, frame: Option<&MetricFrame>, mut w: W) -> io::Result<()> {
    let (metrics, values) = attached(graph, frame);
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(w, r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns">"#)?;
    writeln!(w, r#"  <key id="label" for="node" attr.name="label" attr.type="string"/>"#)?;
    writeln!(w, r#"  <key id="gender" for="node" attr.name="gender" attr.type="string"/>"#)?;
    writeln!(w, r#"  <key id="affiliation" for="node" attr.name="affiliation" attr.type="string"/>"#)?;
    for m in &metrics {
        writeln!(w, r#"  <key id="{m}" for="node" attr.name="{m}" attr.type="double"/>"#)?;
    }
    writeln!(w, r#"  <key id="multiplicity" for="edge" attr.name="multiplicity" attr.type="int"/>"#)?;
    writeln!(w, r#"  <graph id="G" edgedefault="undirected">"#)?;
    for (v, node) in graph.nodes().iter().enumerate() {
        writeln!(w, r#"    <node id="{}">"#, xml_escape(&node.id))?;
        writeln!(w, r#"      <data key="label">{}</data>"#, xml_escape(&node.label))?;
        if let Some(g) = node.gender {
            writeln!(w, r#"      <data key="gender">{}</data>"#, Gender::as_str(g))?;
        }
        if let Some(a) = &node.affiliation {
            writeln!(w, r#"      <data key="affiliation">{}</data>"#, xml_escape(a))?;
        }
        if let Some(m) = values[v] {
            for &metric in &metrics {
                let value = m.get(metric).unwrap_or(0.0);
                writeln!(w, r#"      <data key="{metric}">{}</data>"#, significant(value, 6))?;
            }
        }
        writeln!(w, "    </node>")?;
    }
    for (i, (u, v, mult)) in graph.edges().enumerate() {
        writeln!(
            w,
            r#"    <edge id="e{i}" source="{}" target="{}">"#,
            xml_escape(&graph.node(u).id),
            xml_escape(&graph.node(v).id)
        )?;
        writeln!(w, r#"      <data key="multiplicity">{mult}</data>"#)?;
        writeln!(w, "    </edge>")?;
    }
    writeln!(w, "  </graph>")?;
    writeln!(w, "</graphml>")
}

pub fn write_dot<W: Write>(graph: &Multigraph, frame: Option<&MetricFrame>, mut w: W) -> io::Result<()> {
    let (metrics, values) = attached(graph, frame);
    writeln!(w, "graph G {{")?;
    for (v, node) in graph.nodes().iter().enumerate() {
        let mut attrs = vec![format!("label={}", dot_quote(&node.label))];
        if let Some(g) = node.gender {
            attrs.push(format!("gender={}", dot_quote(g.as_str())));
        }
        if let Some(a) = &node.affiliation {
            attrs.push(format!("affiliation={}", dot_quote(a)));
        }
        if let Some(m) = values[v] {
            for &metric in &metrics {
                let value = m.get(metric).unwrap_or(0.0);
                attrs.push(format!("{metric}={}", dot_quote(&significant(value, 6))));
            }
        }
        writeln!(w, "  {} [{}];", dot_quote(&node.id), attrs.join(", "))?;
    }
    for (u, v, mult) in graph.edges() {
        writeln!(
            w,
            "  {} -- {} [multiplicity={mult}, penwidth={mult}];",
            dot_quote(&graph.node(u).id),
            dot_quote(&graph.node(v).id)
        )?;
    }
    writeln!(w, "}}")
}
