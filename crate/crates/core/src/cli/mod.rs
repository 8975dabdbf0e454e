//! Command-line driver. Each stage reads and writes files so the pipeline
//! `ingest → build → metrics → stats/export` can be run one step at a time.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error.

mod export;
mod plot;
mod render;

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::build::{
    build_coauthor, build_jel, cluster_metrics, group_partition, intra_extra_edges, CoauthorOptions,
    GroupKey, JelOptions, YearWindow,
};
use crate::corpus::{
    annotate, generate_corpus, parse_corpus, yearly_counts, AnnotationKind, Corpus, Gender,
    GeneratorConfig, ParseOptions,
};
use crate::graph::{component_metrics_table, read_graph, Multigraph};
use crate::metrics::{metric_frame, Metric, MetricFrame};
use crate::stats::{
    correlation_matrix, degree_distribution, group_mean_deviation, least_squares_slope,
    scatter_matrix_data, small_world_report, top_k,
};

pub use export::{artifact_paths, export_graph, write_dot, write_graphml, ExportError, ExportFormat};
pub use plot::{plot_svg, PlotData, PlotError};
pub use render::{cluster_table, component_table, render_table, NumberStyle, RenderError, TableFormat};

#[derive(Debug, Parser)]
#[command(name = "coauthnet", version, about = "Coauthorship and JEL network analysis")]
struct Cli {
    /// Table layout for printed results.
    #[arg(long, global = true, default_value = "tsv")]
    format: TableFormat,
    /// Decimal separator in printed tables [default: from COAUTHNET_DECIMAL, else period].
    #[arg(long, global = true)]
    decimal: Option<NumberStyle>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a record file (plus optional directory and annotations) into a corpus.
    Ingest(IngestArgs),
    /// Generate a synthetic corpus.
    Simulate(SimulateArgs),
    /// Build a network from a corpus, or group metrics from a graph.
    #[command(subcommand)]
    Build(BuildCommand),
    /// Per-node metric frame of a graph.
    Metrics(MetricsArgs),
    /// Tables and summaries from graphs, frames and corpora.
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Write graphs and plots in other formats.
    #[command(subcommand)]
    Export(ExportCommand),
}

#[derive(Debug, Args)]
struct IngestArgs {
    /// Paper records (`paper_id,year,title,authors,affiliations,jel1,jel2`).
    #[arg(long)]
    records: PathBuf,
    /// Author directory (`canonical_name,gender,affiliation`).
    #[arg(long)]
    directory: Option<PathBuf>,
    /// Gender annotation file (`canonical_name,gender,affiliation`).
    #[arg(long)]
    gender: Option<PathBuf>,
    /// Affiliation annotation file (`canonical_name,gender,affiliation`).
    #[arg(long)]
    affiliations: Option<PathBuf>,
    /// Keep only papers published in FROM:TO.
    #[arg(long)]
    years: Option<YearWindow>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    papers: usize,
    #[arg(long, default_value_t = 900)]
    authors: usize,
    /// Preferential-attachment exponent; 0 selects authors uniformly.
    #[arg(long, default_value_t = 1.0)]
    bias: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Subcommand)]
enum BuildCommand {
    /// Coauthorship network.
    Coauthor(CoauthorArgs),
    /// Thematic network of JEL codes.
    Jel(JelArgs),
    /// Structural metrics per group (affiliation, JEL letter or gender).
    Affil(AffilArgs),
}

#[derive(Debug, Args)]
struct CoauthorArgs {
    #[arg(long)]
    corpus: PathBuf,
    /// Publication years FROM:TO, inclusive.
    #[arg(long)]
    window: Option<YearWindow>,
    /// Restrict to authors of one gender (F or M).
    #[arg(long, value_parser = parse_gender)]
    gender: Option<Gender>,
    /// Keep authors without coauthored papers as isolated nodes.
    #[arg(long)]
    include_single: bool,
    /// Output prefix; writes PREFIX.edges.csv and PREFIX.nodes.csv.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct JelArgs {
    #[arg(long)]
    corpus: PathBuf,
    /// Only papers with two or more authors.
    #[arg(long)]
    coauthored_only: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct AffilArgs {
    /// Graph prefix.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "affiliation", value_parser = parse_key)]
    key: GroupKey,
    /// Also print within/across-group edge counts.
    #[arg(long)]
    mix: bool,
}

#[derive(Debug, Args)]
struct MetricsArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Add random-walk betweenness and closeness.
    #[arg(long)]
    rw: bool,
    /// Frame file; printed when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum StatsCommand {
    /// Degree histogram.
    DegreeDist {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Pearson correlations between frame columns.
    Corr {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long, value_delimiter = ',')]
        metrics: Vec<Metric>,
    },
    /// Relative deviation of each group mean from the overall mean.
    Deviation {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long, default_value = "gender", value_parser = parse_key)]
        key: GroupKey,
        /// Classes to compare; all classified groups when omitted.
        #[arg(long, value_delimiter = ',')]
        classes: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        metrics: Vec<Metric>,
    },
    /// Giant component share and mean distance against ln(size).
    Smallworld {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Highest-ranked nodes by one metric.
    Top {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        metric: Metric,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, value_parser = parse_key, requires = "group")]
        key: Option<GroupKey>,
        #[arg(long, requires = "key")]
        group: Option<String>,
    },
    /// Single-authored and coauthored papers per year.
    Years {
        #[arg(long)]
        corpus: PathBuf,
    },
    /// Structural metrics per connected component.
    Components {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum ExportCommand {
    /// GraphML with node attributes and edge multiplicities.
    Graphml(GraphExportArgs),
    /// Graphviz DOT.
    Dot(GraphExportArgs),
    /// Edge list plus node sidecar under a new prefix.
    Edges(GraphExportArgs),
    /// Degree histogram, log-log degree plot or scatter matrix as SVG.
    Svg(SvgArgs),
}

#[derive(Debug, Args)]
struct GraphExportArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Metric frame whose columns are attached as node attributes.
    #[arg(long)]
    frame: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SvgKind {
    Histogram,
    Loglog,
    Scatter,
}

#[derive(Debug, Args)]
struct SvgArgs {
    #[arg(long, value_enum)]
    kind: SvgKind,
    /// Graph prefix (histogram, loglog).
    #[arg(long, required_if_eq_any = [("kind", "histogram"), ("kind", "loglog")])]
    graph: Option<PathBuf>,
    /// Metric frame (scatter).
    #[arg(long, required_if_eq("kind", "scatter"))]
    frame: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    metrics: Vec<Metric>,
    #[arg(long)]
    out: PathBuf,
}

fn parse_gender(s: &str) -> Result<Gender, String> {
    match s.parse::<Gender>() {
        Ok(Gender::Unknown) | Err(_) => Err(format!("expected F or M, got {s:?}")),
        Ok(g) => Ok(g),
    }
}

fn parse_key(s: &str) -> Result<GroupKey, String> {
    s.parse::<GroupKey>().map_err(|e| e.to_string())
}

struct Session<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    format: TableFormat,
    style: NumberStyle,
}

/// Runs the driver with standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut ctx = Session {
        out,
        err,
        format: cli.format,
        style: cli.decimal.unwrap_or_else(NumberStyle::from_env),
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e:#}");
            2
        }
    }
}

fn dispatch(command: Command, ctx: &mut Session<'_>) -> Result<()> {
    match command {
        Command::Ingest(args) => ingest(args, ctx),
        Command::Simulate(args) => {
            let config = GeneratorConfig::new(args.seed, args.papers, args.authors, args.bias);
            let corpus = generate_corpus(&config)?;
            write_file(&args.out, corpus.to_json().as_bytes())?;
            writeln!(
                ctx.err,
                "generated {} papers, {} authors",
                corpus.entries().len(),
                corpus.directory().len()
            )?;
            Ok(())
        }
        Command::Build(BuildCommand::Coauthor(args)) => {
            let corpus = load_corpus(&args.corpus)?;
            let options = CoauthorOptions {
                window: args.window,
                gender: args.gender,
                include_single_authors: args.include_single,
            };
            let graph = build_coauthor(&corpus, &options);
            save_graph(&graph, &args.out)?;
            report_graph(ctx, &graph)
        }
        Command::Build(BuildCommand::Jel(args)) => {
            let corpus = load_corpus(&args.corpus)?;
            let (graph, loops) = build_jel(
                &corpus,
                &JelOptions {
                    coauthored_only: args.coauthored_only,
                },
            );
            save_graph(&graph, &args.out)?;
            writeln!(
                ctx.err,
                "self-loops from {} single-code and {} identical-pair papers",
                loops.single_code_papers, loops.identical_pair_papers
            )?;
            report_graph(ctx, &graph)
        }
        Command::Build(BuildCommand::Affil(args)) => {
            let graph = load_graph(&args.graph)?;
            let partition = group_partition(&graph, args.key);
            let rows = cluster_metrics(&graph, &partition)?;
            let (header, body) = cluster_table(&rows, ctx.style);
            print_table(ctx, &header, &body)?;
            if args.mix {
                let mix = intra_extra_edges(&graph, &partition)?;
                let header = render::strings(["Group", "Intra", "Extra"]);
                let mut body: Vec<Vec<String>> = mix
                    .per_group
                    .iter()
                    .map(|(label, (intra, extra))| vec![label.clone(), intra.to_string(), extra.to_string()])
                    .collect();
                body.push(vec!["Total".into(), mix.intra_total().to_string(), mix.extra_total().to_string()]);
                writeln!(ctx.out)?;
                print_table(ctx, &header, &body)?;
            }
            Ok(())
        }
        Command::Metrics(args) => {
            let graph = load_graph(&args.graph)?;
            let frame = metric_frame(&graph, args.rw)?;
            match args.out {
                Some(path) => {
                    let mut buf = Vec::new();
                    frame.write_tsv(&mut buf)?;
                    write_file(&path, &buf)
                }
                None => Ok(frame.write_tsv(&mut *ctx.out)?),
            }
        }
        Command::Stats(command) => stats(command, ctx),
        Command::Export(command) => export(command, ctx),
    }
}

fn ingest(args: IngestArgs, ctx: &mut Session<'_>) -> Result<()> {
    let options = ParseOptions {
        years: args.years.map(|w| w.range()),
    };
    let mut corpus = parse_corpus(&args.records, args.directory.as_deref(), &options)?;
    for (path, kind) in [
        (&args.gender, AnnotationKind::Gender),
        (&args.affiliations, AnnotationKind::Affiliation),
    ] {
        if let Some(path) = path {
            let (updated, report) = annotate(corpus, path, kind)?;
            corpus = updated;
            for name in &report.unknown_names {
                writeln!(ctx.err, "unknown author in {}: {name}", path.display())?;
            }
        }
    }
    write_file(&args.out, corpus.to_json().as_bytes())?;
    writeln!(
        ctx.err,
        "ingested {} papers, {} authors",
        corpus.entries().len(),
        corpus.directory().len()
    )?;
    Ok(())
}

fn stats(command: StatsCommand, ctx: &mut Session<'_>) -> Result<()> {
    let style = ctx.style;
    match command {
        StatsCommand::DegreeDist { graph } => {
            let dist = degree_distribution(&load_graph(&graph)?);
            let body: Vec<Vec<String>> = dist
                .histogram
                .iter()
                .map(|(d, c)| vec![d.to_string(), c.to_string()])
                .collect();
            print_table(ctx, &render::strings(["degree", "nodes"]), &body)
        }
        StatsCommand::Corr { frame, metrics } => {
            let frame = load_frame(&frame)?;
            let metrics = metrics_or_all(&frame, metrics);
            let matrix = correlation_matrix(&frame, &metrics)?;
            let mut header = vec![String::new()];
            header.extend(matrix.names.iter().cloned());
            let body: Vec<Vec<String>> = matrix
                .names
                .iter()
                .zip(&matrix.values)
                .map(|(name, row)| {
                    let mut cells = vec![name.clone()];
                    cells.extend(row.iter().map(|v| style.optional(*v, 3)));
                    cells
                })
                .collect();
            print_table(ctx, &header, &body)
        }
        StatsCommand::Deviation {
            frame,
            key,
            classes,
            metrics,
        } => {
            let frame = load_frame(&frame)?;
            let metrics = metrics_or_all(&frame, metrics);
            let table = group_mean_deviation(&frame, &frame.partition(key), &classes, &metrics)?;
            let mut header = vec!["Group".to_string(), "N".to_string()];
            header.extend(metrics.iter().map(|m| m.name().to_string()));
            let body: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|row| {
                    let mut cells = vec![row.label.clone(), row.size.to_string()];
                    cells.extend((0..metrics.len()).map(|i| match row.percent(i) {
                        Some(p) => format!("{}%", style.fixed(p, 1)),
                        None => "-".to_string(),
                    }));
                    cells
                })
                .collect();
            print_table(ctx, &header, &body)
        }
        StatsCommand::Smallworld { graph } => {
            let r = small_world_report(&load_graph(&graph)?);
            let body = vec![
                vec!["nodes".into(), r.nodes.to_string()],
                vec!["ln_nodes".into(), style.fixed(r.ln_nodes, 3)],
                vec!["giant_nodes".into(), r.giant_nodes.to_string()],
                vec!["ln_giant".into(), style.fixed(r.ln_giant, 3)],
                vec!["giant_share_nodes".into(), style.fixed(r.giant_share_nodes, 3)],
                vec!["giant_share_edges".into(), style.fixed(r.giant_share_edges, 3)],
                vec!["agd_giant".into(), style.optional(r.agd_giant, 3)],
                vec!["mgd_giant".into(), r.mgd_giant.to_string()],
                vec!["verdict".into(), r.verdict],
            ];
            print_table(ctx, &render::strings(["measure", "value"]), &body)
        }
        StatsCommand::Top {
            frame,
            metric,
            k,
            key,
            group,
        } => {
            let frame = load_frame(&frame)?;
            let filter = key.zip(group.as_deref());
            let rows = top_k(&frame, metric, k as usize, filter)?;
            let header = vec![
                "Rank".to_string(),
                "Name".to_string(),
                "Degree".to_string(),
                metric.name().to_string(),
                "Affiliation".to_string(),
            ];
            let body: Vec<Vec<String>> = rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    vec![
                        (i + 1).to_string(),
                        r.label.clone(),
                        r.degree.to_string(),
                        style.fixed(r.value, 3),
                        r.affiliation.clone(),
                    ]
                })
                .collect();
            print_table(ctx, &header, &body)
        }
        StatsCommand::Years { corpus } => {
            let counts = yearly_counts(&load_corpus(&corpus)?);
            let body: Vec<Vec<String>> = counts
                .iter()
                .map(|c| {
                    vec![
                        c.year.to_string(),
                        c.single.to_string(),
                        c.coauthored.to_string(),
                        style.optional(c.sc_ratio(), 3),
                    ]
                })
                .collect();
            print_table(ctx, &render::strings(["year", "single", "coauthored", "s_c"]), &body)?;
            let points: Vec<(f64, f64)> = counts
                .iter()
                .filter_map(|c| c.sc_ratio().map(|r| (f64::from(c.year), r)))
                .collect();
            writeln!(ctx.err, "s/c trend slope: {}", style.optional(least_squares_slope(&points), 4))?;
            Ok(())
        }
        StatsCommand::Components { graph } => {
            let rows = component_metrics_table(&load_graph(&graph)?);
            let (header, body) = component_table(&rows, style);
            print_table(ctx, &header, &body)
        }
    }
}

fn export(command: ExportCommand, ctx: &mut Session<'_>) -> Result<()> {
    let (args, format) = match command {
        ExportCommand::Graphml(a) => (a, ExportFormat::GraphMl),
        ExportCommand::Dot(a) => (a, ExportFormat::Dot),
        ExportCommand::Edges(a) => (a, ExportFormat::EdgeCsv),
        ExportCommand::Svg(args) => return export_svg(args, ctx),
    };
    let graph = load_graph(&args.graph)?;
    let frame = args.frame.as_deref().map(load_frame).transpose()?;
    for path in export_graph(&graph, frame.as_ref(), format, &args.out)? {
        writeln!(ctx.err, "wrote {}", path.display())?;
    }
    Ok(())
}

fn export_svg(args: SvgArgs, ctx: &mut Session<'_>) -> Result<()> {
    let svg = match args.kind {
        SvgKind::Histogram | SvgKind::Loglog => {
            let graph = load_graph(args.graph.as_deref().context("--graph is required")?)?;
            let dist = degree_distribution(&graph);
            match args.kind {
                SvgKind::Histogram => plot_svg(PlotData::Histogram(&dist.histogram))?,
                _ => plot_svg(PlotData::LogLog(&dist.loglog_points))?,
            }
        }
        SvgKind::Scatter => {
            let frame = load_frame(args.frame.as_deref().context("--frame is required")?)?;
            let metrics = if args.metrics.is_empty() {
                vec![
                    Metric::Degree,
                    Metric::Betweenness,
                    Metric::Closeness,
                    Metric::Eigenvector,
                    Metric::PageRank,
                ]
            } else {
                args.metrics
            };
            let panels = scatter_matrix_data(&frame, &metrics)?;
            plot_svg(PlotData::ScatterMatrix(&panels))?
        }
    };
    write_file(&args.out, svg.as_bytes())?;
    writeln!(ctx.err, "wrote {}", args.out.display())?;
    Ok(())
}

fn metrics_or_all(frame: &MetricFrame, metrics: Vec<Metric>) -> Vec<Metric> {
    if metrics.is_empty() {
        frame.metrics()
    } else {
        metrics
    }
}

fn print_table(ctx: &mut Session<'_>, header: &[String], body: &[Vec<String>]) -> Result<()> {
    let text = render_table(header, body, ctx.format)?;
    ctx.out.write_all(text.as_bytes())?;
    Ok(())
}

fn report_graph(ctx: &mut Session<'_>, graph: &Multigraph) -> Result<()> {
    let counts = graph.edge_counts();
    writeln!(
        ctx.err,
        "{} nodes, {} unique edges, {} duplicates, {} self-loops",
        graph.node_count(),
        counts.unique,
        counts.duplicates,
        counts.self_loops
    )?;
    Ok(())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .with_context(|| format!("cannot open {}", path.display()))
}

fn load_corpus(path: &Path) -> Result<Corpus> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Corpus::from_json(&text).with_context(|| format!("invalid corpus {}", path.display()))
}

fn save_graph(graph: &Multigraph, prefix: &Path) -> Result<()> {
    export_graph(graph, None, ExportFormat::EdgeCsv, prefix)?;
    Ok(())
}

fn load_graph(prefix: &Path) -> Result<Multigraph> {
    let (edges, nodes) = artifact_paths(prefix);
    let graph = read_graph(open(&nodes)?, open(&edges)?)
        .with_context(|| format!("invalid graph {}", prefix.display()))?;
    Ok(graph)
}

fn load_frame(path: &Path) -> Result<MetricFrame> {
    let frame = MetricFrame::read_tsv(open(path)?).with_context(|| format!("invalid frame {}", path.display()))?;
    if frame.is_empty() && fs::metadata(path)?.len() == 0 {
        bail!("empty frame file {}", path.display());
    }
    Ok(frame)
}
