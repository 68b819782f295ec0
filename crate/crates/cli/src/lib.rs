//! Command-line pipelines over `morphograph`: graph and image ingestion,
//! one module pipeline per subcommand, JSON / DOT / WGR / PGM output.

pub mod pgm;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use morphograph::flooding::{flooding_from_edges, flooding_from_nodes};
use morphograph::geodesics::{classical_watershed, core_expanding, moore_dijkstra};
use morphograph::lexalgebra::{distances_to_minima, LexWeight, Solver};
use morphograph::steepness::zeta_prune;
use morphograph::waterfall::{build_hierarchy, mst_emergence, waterfall_levels};
use morphograph::watershed::basins_with_zones;
use morphograph::wgr::{parse_wgr, write_wgr};
use morphograph::{FloodingGraph, TiePolicy, Weight, WeightedGraph};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed image: {0}")]
    MalformedImage(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] morphograph::Error),
}

impl CliError {
    /// 3 when the input parsed but broke an invariant, 2 otherwise.
    pub fn exit_code(&self) -> u8 {
        use morphograph::Error as E;
        match self {
            CliError::Core(E::InvalidFloodingGraph(_) | E::ZeroNonMinimum(_) | E::IncompleteHierarchy) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        if self.exit_code() == 3 {
            "invariant"
        } else {
            "input"
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Wgr,
    PgmLabels,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Dijkstra,
    Core,
    Hq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closure,
    Jacobi,
    GaussSeidel,
    Jordan,
    Gondran,
    Dijkstra,
    Core,
}

#[derive(Parser, Debug)]
#[command(name = "morphograph", version, about = "Watershed segmentation on weighted graphs and graymaps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input: a .wgr graph or a P2/P5 graymap.
    pub input: PathBuf,
    /// Output format; graphs default to wgr, everything else to json.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (stdout if absent; required for pgm-labels).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Pixel connectivity for graymap input.
    #[arg(long, default_value_t = 4)]
    pub connectivity: u8,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Derive the flooding graph (node or edge weights in, both out).
    Flood(Common),
    /// Flooding graph pruned to the given steepness.
    Prune {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        steepness: usize,
    },
    /// Catchment basins of the regional minima.
    Watershed {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Algo::Dijkstra)]
        algo: Algo,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value = "min-label")]
        tie: TiePolicy,
    },
    /// Waterfall hierarchy of nested partitions.
    Waterfall {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value = "min-label")]
        tie: TiePolicy,
    },
    /// Minimum spanning tree emerging from the waterfall forests.
    Mst {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value = "min-label")]
        tie: TiePolicy,
    },
    /// Lexicographic distances to the regional minima.
    Dist {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Method::Closure)]
        method: Method,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Flood,
    Prune,
    Watershed(Algo),
    Waterfall,
    Mst,
    Dist(Method),
}

/// Validated settings of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub depth: usize,
    pub steepness: usize,
    pub tie: TiePolicy,
    pub connectivity: u8,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self, CliError> {
        let (command, common, depth, steepness, tie) = match cli.command {
            Cmd::Flood(c) => (Command::Flood, c, 1, 1, TiePolicy::MinLabel),
            Cmd::Prune { common, steepness } => (Command::Prune, common, 1, steepness, TiePolicy::MinLabel),
            Cmd::Watershed { common, algo, depth, tie } => (Command::Watershed(algo), common, depth, 1, tie),
            Cmd::Waterfall { common, depth, tie } => (Command::Waterfall, common, depth, 1, tie),
            Cmd::Mst { common, depth, tie } => (Command::Mst, common, depth, 1, tie),
            Cmd::Dist { common, method, depth } => (Command::Dist(method), common, depth, 1, TiePolicy::MinLabel),
        };
        let graph_out = matches!(command, Command::Flood | Command::Prune);
        let cfg = RunConfig {
            command,
            input: common.input,
            depth,
            steepness,
            tie,
            connectivity: common.connectivity,
            format: common.format.unwrap_or(if graph_out { Format::Wgr } else { Format::Json }),
            output: common.output,
        };
        cfg.check()?;
        Ok(cfg)
    }
}

impl RunConfig {
    fn check(&self) -> Result<(), CliError> {
        if self.depth == 0 {
            return Err(CliError::Usage("--depth must be at least 1".into()));
        }
        if self.steepness == 0 {
            return Err(CliError::Usage("--steepness must be at least 1".into()));
        }
        if !matches!(self.connectivity, 4 | 8) {
            return Err(CliError::Usage(format!("--connectivity must be 4 or 8, got {}", self.connectivity)));
        }
        if self.format == Format::PgmLabels && self.output.is_none() {
            return Err(CliError::Usage("pgm-labels needs --output".into()));
        }
        Ok(())
    }
}

/// Bytes produced by a run: what goes to stdout and the files to write.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Artifacts {
    pub stdout: Vec<u8>,
    pub files: Vec<(PathBuf, Vec<u8>)>,
}

impl Artifacts {
    fn emit(cfg: &RunConfig, text: String) -> Artifacts {
        match &cfg.output {
            Some(p) => Artifacts { stdout: vec![], files: vec![(p.clone(), text.into_bytes())] },
            None => Artifacts { stdout: text.into_bytes(), files: vec![] },
        }
    }
}

pub struct Input {
    pub graph: WeightedGraph,
    /// Width and height for graymap input.
    pub raster: Option<(usize, usize)>,
}

pub fn load_input(path: &Path, connectivity: u8) -> Result<Input, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    if bytes.starts_with(b"P2") || bytes.starts_with(b"P5") {
        let img = pgm::parse_pgm(&bytes)?;
        return Ok(Input { graph: pgm::image_to_graph(&img, connectivity)?, raster: Some((img.width, img.height)) });
    }
    let text = String::from_utf8(bytes).map_err(|_| CliError::Usage(format!("{} is neither a graymap nor UTF-8 text", path.display())))?;
    Ok(Input { graph: parse_wgr(&text)?, raster: None })
}

/// Edge weights only: flood from edges; node weights only: flood from
/// nodes; both: the input must already be a flooding graph.
pub fn to_flooding(g: &WeightedGraph) -> Result<FloodingGraph, CliError> {
    Ok(match (g.node_weights().is_some(), g.edge_weights().is_some()) {
        (true, true) => FloodingGraph::new(g.clone())?,
        (false, true) => flooding_from_edges(g)?,
        _ => flooding_from_nodes(g)?,
    })
}

pub fn run(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let input = load_input(&cfg.input, cfg.connectivity)?;
    let n = input.graph.node_count();
    match cfg.command {
        Command::Flood => graph_output(cfg, to_flooding(&input.graph)?.graph()),
        Command::Prune => graph_output(cfg, zeta_prune(&to_flooding(&input.graph)?, cfg.steepness - 1)?.graph()),
        Command::Watershed(algo) => {
            let f = to_flooding(&input.graph)?;
            let labels = match algo {
                Algo::Dijkstra => moore_dijkstra(&f, cfg.depth, cfg.tie)?.labels,
                Algo::Core => core_expanding(&f, cfg.depth)?.labels,
                Algo::Hq => classical_watershed(&f)?.labels,
            };
            let zones = basins_with_zones(&f, cfg.depth)?.zone_nodes().into_iter().filter(|&i| i < n).collect();
            let minima = morphograph::flooding::minima_of_flooding(&f)?.basin_count();
            let labels: Vec<u32> = labels.as_ids()[..n].to_vec();
            match cfg.format {
                Format::Json => Ok(Artifacts::emit(cfg, json(&Segmentation { labels, zones, minima }))),
                Format::Dot => Ok(Artifacts::emit(cfg, dot(&input.graph, Some(&labels), None))),
                Format::PgmLabels => label_maps(cfg, &input, &[labels]),
                Format::Wgr => Err(unsupported(cfg)),
            }
        }
        Command::Waterfall => {
            let h = build_hierarchy(&input.graph, cfg.depth, cfg.tie)?;
            let levels: Vec<Vec<u32>> = h.levels.iter().map(|l| l.partition.canonical().as_ids()[..n].to_vec()).collect();
            let edge_level = waterfall_levels(&h);
            let edges: Vec<(usize, usize, u32)> = visible_edges(&h.base, n).map(|e| (h.base.edge(e).0, h.base.edge(e).1, edge_level[e])).collect();
            match cfg.format {
                Format::Json => {
                    let out = WaterfallOut { region_counts: h.region_counts(), levels, edge_levels: edges };
                    Ok(Artifacts::emit(cfg, json(&out)))
                }
                Format::Dot => {
                    let lv: Vec<(usize, usize, String)> = edges.iter().map(|&(u, v, l)| (u, v, format!("level {l}"))).collect();
                    Ok(Artifacts::emit(cfg, dot(&input.graph, levels.first().map(|v| &v[..]), Some(&lv))))
                }
                Format::PgmLabels => label_maps(cfg, &input, &levels),
                Format::Wgr => Err(unsupported(cfg)),
            }
        }
        Command::Mst => {
            let h = build_hierarchy(&input.graph, cfg.depth, cfg.tie)?;
            let tree = mst_emergence(&h)?;
            let w = h.base.edge_weights().expect("base graph is edge-weighted");
            let edges: Vec<(usize, usize, Weight)> =
                visible_edges(&h.base, n).filter(|&e| tree.contains(e)).map(|e| (h.base.edge(e).0, h.base.edge(e).1, w[e])).collect();
            let weight = edges.iter().map(|&(_, _, x)| x.as_level().unwrap_or(0) as u128).sum();
            match cfg.format {
                Format::Json => Ok(Artifacts::emit(cfg, json(&MstOut { weight, edges }))),
                Format::Dot => {
                    let lv: Vec<(usize, usize, String)> = edges.iter().map(|&(u, v, x)| (u, v, x.to_string())).collect();
                    Ok(Artifacts::emit(cfg, dot(&input.graph, None, Some(&lv))))
                }
                _ => Err(unsupported(cfg)),
            }
        }
        Command::Dist(method) => {
            let f = to_flooding(&input.graph)?;
            let k = cfg.depth;
            let d = match method {
                Method::Dijkstra => moore_dijkstra(&f, k, TiePolicy::MinLabel)?.distances,
                Method::Core => core_expanding(&f, k)?.distances,
                m => distances_to_minima(&f, k, solver(m))?,
            };
            let distances = d[..n].to_vec();
            match cfg.format {
                Format::Json => Ok(Artifacts::emit(cfg, json(&DistOut { depth: k, distances }))),
                _ => Err(unsupported(cfg)),
            }
        }
    }
}

fn solver(m: Method) -> Solver {
    match m {
        Method::Closure => Solver::Closure,
        Method::Jacobi => Solver::Jacobi,
        Method::GaussSeidel => Solver::GaussSeidel,
        Method::Jordan => Solver::Jordan,
        Method::Gondran => Solver::Gondran,
        Method::Dijkstra | Method::Core => unreachable!("graph-native methods"),
    }
}

fn unsupported(cfg: &RunConfig) -> CliError {
    CliError::Usage(format!("format {:?} is not available for {:?}", cfg.format, cfg.command))
}

/// Edges between input nodes; edges to dummy nodes stay hidden.
fn visible_edges(g: &WeightedGraph, n: usize) -> impl Iterator<Item = usize> + '_ {
    (0..g.edge_count()).filter(move |&e| g.edge(e).0 < n && g.edge(e).1 < n)
}

#[derive(Serialize)]
struct Segmentation {
    /// Basin per node, 0 on none.
    labels: Vec<u32>,
    zones: Vec<usize>,
    minima: usize,
}

#[derive(Serialize)]
struct WaterfallOut {
    region_counts: Vec<usize>,
    levels: Vec<Vec<u32>>,
    edge_levels: Vec<(usize, usize, u32)>,
}

#[derive(Serialize)]
struct MstOut {
    weight: u128,
    edges: Vec<(usize, usize, Weight)>,
}

#[derive(Serialize)]
struct DistOut {
    depth: usize,
    distances: Vec<LexWeight>,
}

#[derive(Serialize)]
struct GraphOut<'a> {
    nodes: Option<&'a [Weight]>,
    edges: Vec<(usize, usize)>,
    edge_weights: Option<&'a [Weight]>,
    dummies: Vec<usize>,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn graph_output(cfg: &RunConfig, g: &WeightedGraph) -> Result<Artifacts, CliError> {
    let text = match cfg.format {
        Format::Wgr => write_wgr(g),
        Format::Json => json(&GraphOut {
            nodes: g.node_weights(),
            edges: g.edges().to_vec(),
            edge_weights: g.edge_weights(),
            dummies: (0..g.node_count()).filter(|&i| g.is_dummy(i)).collect(),
        }),
        Format::Dot => dot(g, None, None),
        Format::PgmLabels => return Err(unsupported(cfg)),
    };
    Ok(Artifacts::emit(cfg, text))
}

/// Undirected DOT; node labels show id, weight and basin, edge labels show
/// the edge weight unless an explicit annotation list is given (then only
/// the annotated edges are drawn).
fn dot(g: &WeightedGraph, labels: Option<&[u32]>, annotated: Option<&[(usize, usize, String)]>) -> String {
    let mut s = String::from("graph G {\n");
    let n = labels.map_or(g.original_node_count(), |l| l.len());
    for i in 0..n {
        let mut text = i.to_string();
        if let Some(w) = g.node_weights() {
            let _ = write!(text, " ({})", w[i]);
        }
        if let Some(l) = labels {
            let _ = write!(text, " b{}", l[i]);
        }
        let _ = writeln!(s, "  {i} [label=\"{text}\"];");
    }
    match annotated {
        Some(list) => list.iter().for_each(|(u, v, a)| {
            let _ = writeln!(s, "  {u} -- {v} [label=\"{a}\"];");
        }),
        None => {
            for (e, &(u, v)) in g.edges().iter().enumerate().filter(|(_, &(u, v))| u < n && v < n) {
                match g.edge_weights() {
                    Some(w) => writeln!(s, "  {u} -- {v} [label=\"{}\"];", w[e]),
                    None => writeln!(s, "  {u} -- {v};"),
                }
                .expect("writing to a string");
            }
        }
    }
    s.push_str("}\n");
    s
}

/// One 8-bit label map per labeling (label mod 255, 0 for none) and a
/// legend listing the gray value of every label.
fn label_maps(cfg: &RunConfig, input: &Input, labelings: &[Vec<u32>]) -> Result<Artifacts, CliError> {
    let (w, h) = input.raster.ok_or_else(|| CliError::Usage("pgm-labels needs graymap input".into()))?;
    let out = cfg.output.as_ref().expect("checked by RunConfig");
    let gray = |l: u32| if l == 0 { 0u8 } else { ((l - 1) % 255 + 1) as u8 };
    let mut files = Vec::new();
    let mut legend = String::from("# level label gray\n");
    for (m, labels) in labelings.iter().enumerate() {
        let path = if labelings.len() == 1 { out.clone() } else { out.with_extension(format!("{m}.pgm")) };
        files.push((path, pgm::write_pgm(w, h, &labels.iter().map(|&l| gray(l)).collect::<Vec<_>>())));
        let distinct: std::collections::BTreeSet<u32> = labels.iter().copied().collect();
        for l in distinct {
            let _ = writeln!(legend, "{m} {l} {}", gray(l));
        }
    }
    files.push((out.with_extension("legend.txt"), legend.into_bytes()));
    Ok(Artifacts { stdout: vec![], files })
}

/// Caps rayon's global pool from `MORPHOGRAPH_THREADS`, if set.
pub fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("MORPHOGRAPH_THREADS") {
        let n: usize = v.parse().map_err(|_| CliError::Usage(format!("MORPHOGRAPH_THREADS must be a count, got `{v}`")))?;
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}
