//! Edge-list exchange format (`u,v,multiplicity`) and node sidecar
//! (`id,label,gender,affiliation`).

use std::io::{Read, Write};

use csv::{ReaderBuilder, WriterBuilder};

use super::{GraphError, Multigraph, NodeData};
use crate::corpus::Gender;

pub fn write_edge_list<W: Write>(graph: &Multigraph, writer: W) -> Result<(), GraphError> {
    let mut out = WriterBuilder::new().from_writer(writer);
    out.write_record(["u", "v", "multiplicity"])?;
    for (u, v, m) in graph.edges() {
        out.write_record([graph.node(u).id.as_str(), graph.node(v).id.as_str(), &m.to_string()])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_node_sidecar<W: Write>(graph: &Multigraph, writer: W) -> Result<(), GraphError> {
    let mut out = WriterBuilder::new().from_writer(writer);
    out.write_record(["id", "label", "gender", "affiliation"])?;
    for node in graph.nodes() {
        out.write_record([
            node.id.as_str(),
            node.label.as_str(),
            node.gender.map(Gender::as_str).unwrap_or(""),
            node.affiliation.as_deref().unwrap_or(""),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Reads a graph back from its node sidecar and edge list. Node order follows
/// the sidecar.
pub fn read_graph<N: Read, E: Read>(nodes: N, edges: E) -> Result<Multigraph, GraphError> {
    let mut graph = Multigraph::new();
    let mut reader = ReaderBuilder::new().from_reader(nodes);
    for row in reader.records() {
        let row = row?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        if row.len() != 4 {
            return Err(GraphError::Malformed {
                line,
                reason: format!("expected 4 node fields, found {}", row.len()),
            });
        }
        let gender = match row[2].trim() {
            "" => None,
            g => Some(g.parse::<Gender>().map_err(|e| GraphError::Malformed {
                line,
                reason: e.to_string(),
            })?),
        };
        let affiliation = match row[3].trim() {
            "" => None,
            a => Some(a.to_string()),
        };
        graph.add_node(NodeData {
            id: row[0].to_string(),
            label: row[1].to_string(),
            gender,
            affiliation,
        })?;
    }

    let mut reader = ReaderBuilder::new().from_reader(edges);
    for row in reader.records() {
        let row = row?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        if row.len() != 3 {
            return Err(GraphError::Malformed {
                line,
                reason: format!("expected u,v,multiplicity, found {} fields", row.len()),
            });
        }
        let u = graph.require(&row[0])?;
        let v = graph.require(&row[1])?;
        let m: u32 = row[2].trim().parse().map_err(|_| GraphError::Malformed {
            line,
            reason: format!("invalid multiplicity {:?}", &row[2]),
        })?;
        graph.add_edge(u, v, m)?;
    }
    Ok(graph)
}
