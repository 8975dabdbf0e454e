//! Plain-text tables and number formatting.

use std::str::FromStr;

use thiserror::Error;

use crate::graph::ClusterMetricsRow;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("row {row} has {found} cells, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Tsv,
    Markdown,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(TableFormat::Tsv),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            other => Err(format!("unknown table format {other:?} (tsv, markdown)")),
        }
    }
}

/// Decimal separator used in rendered tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NumberStyle {
    #[default]
    Period,
    Comma,
}

impl NumberStyle {
    pub const ENV_VAR: &'static str = "COAUTHNET_DECIMAL";

    /// Reads the environment variable; anything but `comma` means period.
    pub fn from_env() -> Self {
        match std::env::var(Self::ENV_VAR).as_deref() {
            Ok("comma") => NumberStyle::Comma,
            _ => NumberStyle::Period,
        }
    }

    pub fn fixed(self, value: f64, decimals: usize) -> String {
        let text = format!("{value:.decimals$}");
        let text = if text.starts_with('-') && text[1..].chars().all(|c| c == '0' || c == '.') {
            text[1..].to_string()
        } else {
            text
        };
        match self {
            NumberStyle::Period => text,
            NumberStyle::Comma => text.replace('.', ","),
        }
    }

    /// `-` for undefined values.
    pub fn optional(self, value: Option<f64>, decimals: usize) -> String {
        value.map_or_else(|| "-".to_string(), |v| self.fixed(v, decimals))
    }
}

impl FromStr for NumberStyle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "period" | "." => Ok(NumberStyle::Period),
            "comma" | "," => Ok(NumberStyle::Comma),
            other => Err(format!("unknown decimal style {other:?} (period, comma)")),
        }
    }
}

/// Renders a header and rows. An empty header emits no header line.
pub fn render_table(header: &[String], rows: &[Vec<String>], format: TableFormat) -> Result<String, RenderError> {
    let width = if header.is_empty() {
        rows.first().map_or(0, Vec::len)
    } else {
        header.len()
    };
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(RenderError::Ragged {
                row: i,
                expected: width,
                found: row.len(),
            });
        }
    }
    let mut out = String::new();
    match format {
        TableFormat::Tsv => {
            if !header.is_empty() {
                out.push_str(&header.join("\t"));
                out.push('\n');
            }
            for row in rows {
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
        }
        TableFormat::Markdown => {
            let line = |cells: &[String]| {
                let escaped: Vec<String> = cells.iter().map(|c| c.replace('|', "\\|")).collect();
                format!("| {} |\n", escaped.join(" | "))
            };
            if !header.is_empty() {
                out.push_str(&line(header));
                out.push_str(&format!("|{}\n", "---|".repeat(width)));
            }
            for row in rows {
                out.push_str(&line(row));
            }
        }
    }
    Ok(out)
}

pub fn strings<const N: usize>(cells: [&str; N]) -> Vec<String> {
    cells.iter().map(|c| c.to_string()).collect()
}

/// Component table layout: label, N, UE, EwD, TE, MGD, AGD, D.
pub fn component_table(rows: &[ClusterMetricsRow], style: NumberStyle) -> (Vec<String>, Vec<Vec<String>>) {
    let header = strings(["Component", "N", "UE", "EwD", "TE", "MGD", "AGD", "D"]);
    let body = rows
        .iter()
        .map(|r| {
            vec![
                r.label.clone(),
                r.nodes.to_string(),
                r.unique_edges.to_string(),
                r.duplicate_edges.to_string(),
                r.total_edges.to_string(),
                r.diameter.to_string(),
                style.optional(r.mean_geodesic, 3),
                style.optional(r.density, 3),
            ]
        })
        .collect();
    (header, body)
}

/// Group table layout with loop and component columns.
pub fn cluster_table(rows: &[ClusterMetricsRow], style: NumberStyle) -> (Vec<String>, Vec<Vec<String>>) {
    let header = strings([
        "Group", "N", "UE", "EwD", "TE", "SL", "CC", "SVCC", "MVCC", "MECC", "MGD", "AGD", "D",
    ]);
    let body = rows
        .iter()
        .map(|r| {
            vec![
                r.label.clone(),
                r.nodes.to_string(),
                r.unique_edges.to_string(),
                r.duplicate_edges.to_string(),
                r.total_edges.to_string(),
                r.self_loops.to_string(),
                r.components.to_string(),
                r.single_vertex_components.to_string(),
                r.max_component_nodes.to_string(),
                r.max_component_edges.to_string(),
                r.diameter.to_string(),
                style.optional(r.mean_geodesic, 3),
                style.optional(r.density, 3),
            ]
        })
        .collect();
    (header, body)
}
