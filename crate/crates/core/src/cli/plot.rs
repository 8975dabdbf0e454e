//! Static SVG charts: degree histogram, log-log degree plot, scatter matrix.

use std::collections::BTreeMap;
use std::fmt::Write;

use thiserror::Error;

use crate::stats::ScatterPanel;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlotError {
    #[error("nothing to plot")]
    EmptyData,
}

#[derive(Debug, Clone, Copy)]
pub enum PlotData<'a> {
    /// Degree to node count.
    Histogram(&'a BTreeMap<usize, usize>),
    /// `(ln degree, ln count)` points.
    LogLog(&'a [(f64, f64)]),
    ScatterMatrix(&'a [ScatterPanel]),
}

const PANEL: f64 = 240.0;
const MARGIN: f64 = 48.0;

struct Frame {
    left: f64,
    top: f64,
    width: f64,
    height: f64,
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        self.left + self.width * unit(x, self.x)
    }

    fn py(&self, y: f64) -> f64 {
        self.top + self.height * (1.0 - unit(y, self.y))
    }
}

fn unit(v: f64, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        (v - lo) / (hi - lo)
    } else {
        0.5
    }
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn num(v: f64) -> String {
    let text = format!("{v:.3}");
    let text = text.trim_end_matches('0').trim_end_matches('.');
    if text == "-0" { "0".to_string() } else { text.to_string() }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn open_svg(out: &mut String, width: f64, height: f64) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="10">"#,
        w = num(width),
        h = num(height)
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
}

fn axes(out: &mut String, f: &Frame, x_label: &str, y_label: &str) {
    let (x0, y0) = (f.left, f.top + f.height);
    writeln!(
        out,
        r#"<path d="M{} {} V{} H{}" fill="none" stroke="black"/>"#,
        num(x0),
        num(f.top),
        num(y0),
        num(x0 + f.width)
    )
    .unwrap();
    for (value, anchor, x) in [(f.x.0, "start", x0), (f.x.1, "end", x0 + f.width)] {
        writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="{anchor}">{}</text>"#,
            num(x),
            num(y0 + 12.0),
            num(value)
        )
        .unwrap();
    }
    for (value, y) in [(f.y.0, y0), (f.y.1, f.top + 8.0)] {
        writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            num(x0 - 4.0),
            num(y),
            num(value)
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        num(x0 + f.width / 2.0),
        num(y0 + 26.0),
        escape(x_label)
    )
    .unwrap();
    let (lx, ly) = (x0 - 30.0, f.top + f.height / 2.0);
    writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" transform="rotate(-90 {} {})">{}</text>"#,
        num(lx),
        num(ly),
        num(lx),
        num(ly),
        escape(y_label)
    )
    .unwrap();
}

fn points(out: &mut String, f: &Frame, data: &[(f64, f64)]) {
    for &(x, y) in data {
        if x.is_finite() && y.is_finite() {
            writeln!(out, r#"<circle cx="{}" cy="{}" r="2"/>"#, num(f.px(x)), num(f.py(y))).unwrap();
        }
    }
}

pub fn plot_svg(data: PlotData<'_>) -> Result<String, PlotError> {
    let mut out = String::new();
    match data {
        PlotData::Histogram(hist) => {
            if hist.is_empty() {
                return Err(PlotError::EmptyData);
            }
            let max_degree = *hist.keys().next_back().unwrap();
            let max_count = *hist.values().max().unwrap();
            let f = Frame {
                left: MARGIN,
                top: MARGIN / 2.0,
                width: PANEL * 2.0,
                height: PANEL,
                x: (0.0, max_degree as f64 + 1.0),
                y: (0.0, max_count as f64),
            };
            open_svg(&mut out, f.width + 1.5 * MARGIN, f.height + 2.0 * MARGIN);
            axes(&mut out, &f, "degree", "nodes");
            let bar = f.width / (max_degree as f64 + 1.0);
            for (&d, &c) in hist {
                let top = f.py(c as f64);
                writeln!(
                    out,
                    r#"<rect class="bar" x="{}" y="{}" width="{}" height="{}" fill="steelblue"/>"#,
                    num(f.px(d as f64)),
                    num(top),
                    num((bar * 0.9).max(0.5)),
                    num(f.top + f.height - top)
                )
                .unwrap();
            }
        }
        PlotData::LogLog(data) => {
            if data.is_empty() {
                return Err(PlotError::EmptyData);
            }
            let f = Frame {
                left: MARGIN,
                top: MARGIN / 2.0,
                width: PANEL * 2.0,
                height: PANEL,
                x: extent(data.iter().map(|p| p.0)),
                y: extent(data.iter().map(|p| p.1)),
            };
            open_svg(&mut out, f.width + 1.5 * MARGIN, f.height + 2.0 * MARGIN);
            axes(&mut out, &f, "ln degree", "ln nodes");
            points(&mut out, &f, data);
        }
        PlotData::ScatterMatrix(panels) => {
            if panels.is_empty() {
                return Err(PlotError::EmptyData);
            }
            let columns = (panels.len() as f64).sqrt().ceil() as usize;
            let rows = panels.len().div_ceil(columns);
            let cell = PANEL + MARGIN;
            open_svg(&mut out, columns as f64 * cell + MARGIN / 2.0, rows as f64 * cell + MARGIN / 2.0);
            for (i, panel) in panels.iter().enumerate() {
                let f = Frame {
                    left: MARGIN + (i % columns) as f64 * cell,
                    top: MARGIN / 2.0 + (i / columns) as f64 * cell,
                    width: PANEL - MARGIN / 2.0,
                    height: PANEL - MARGIN / 2.0,
                    x: extent(panel.points.iter().map(|p| p.0)),
                    y: extent(panel.points.iter().map(|p| p.1)),
                };
                let f = Frame {
                    x: if f.x.0.is_finite() { f.x } else { (0.0, 0.0) },
                    y: if f.y.0.is_finite() { f.y } else { (0.0, 0.0) },
                    ..f
                };
                writeln!(
                    out,
                    r#"<g class="panel" data-x="{}" data-y="{}" data-degenerate="{}">"#,
                    escape(&panel.x),
                    escape(&panel.y),
                    panel.degenerate
                )
                .unwrap();
                axes(&mut out, &f, &panel.x, &panel.y);
                points(&mut out, &f, &panel.points);
                writeln!(out, "</g>").unwrap();
            }
        }
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
