//! Reading networks from text, generating them, and saving them.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{clique_complex, explicit_complex_labeled, SimplicialNetwork};
use crate::error::{Error, Result};
use crate::graph::{Graph, Simplification};
use crate::persistence::FiltrationOrder;
use crate::simplex::Simplex;

/// Options for [`parse_edge_list`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeListOptions {
    /// Token separator; `None` splits on whitespace and commas.
    pub delimiter: Option<char>,
    /// Subtracted from every vertex id (e.g. 1 for one-based files).
    pub index_base: u64,
    /// When false, lines are read as directed arcs and only arcs present in
    /// both directions become edges.
    pub symmetrize: bool,
}

impl Default for EdgeListOptions {
    fn default() -> Self {
        EdgeListOptions { delimiter: None, index_base: 0, symmetrize: true }
    }
}

/// A parsed edge list and what was dropped while simplifying it.
#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub dropped: Simplification,
}

fn tokens<'a>(line: &'a str, delimiter: Option<char>) -> Vec<&'a str> {
    match delimiter {
        Some(d) => line.split(d).map(str::trim).filter(|t| !t.is_empty()).collect(),
        None => line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect(),
    }
}

fn is_comment(line: &str) -> bool {
    line.is_empty() || line.starts_with('#') || line.starts_with('%')
}

/// Reads `u v [weight]` lines. Lines starting with `#` or `%` are comments;
/// in a MatrixMarket file (`%%MatrixMarket` header) the size line is skipped.
/// Vertex labels keep the file's ids (minus `index_base`), ordered numerically.
pub fn parse_edge_list(text: &str, options: &EdgeListOptions) -> Result<ParsedGraph> {
    let matrix_market = text.trim_start().starts_with("%%MatrixMarket");
    let mut size_line_pending = matrix_market;
    let mut arcs: Vec<(u64, u64)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if is_comment(line) {
            continue;
        }
        if size_line_pending {
            size_line_pending = false;
            continue;
        }
        let parse_err = |msg: String| Error::Parse { line: i + 1, msg };
        let toks = tokens(line, options.delimiter);
        if toks.len() < 2 || toks.len() > 3 {
            return Err(parse_err(format!("expected 2 vertex ids and an optional weight, got '{line}'")));
        }
        let mut ids = [0u64; 2];
        for (slot, tok) in ids.iter_mut().zip(&toks) {
            let v: u64 = tok.parse().map_err(|_| parse_err(format!("bad vertex id '{tok}'")))?;
            *slot = v
                .checked_sub(options.index_base)
                .ok_or_else(|| parse_err(format!("vertex id {v} below index base {}", options.index_base)))?;
        }
        if let Some(w) = toks.get(2) {
            w.parse::<f64>().map_err(|_| parse_err(format!("bad weight '{w}'")))?;
        }
        arcs.push((ids[0], ids[1]));
    }

    let mut labels: Vec<u64> = arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
    labels.sort_unstable();
    labels.dedup();
    let index: BTreeMap<u64, u32> = labels.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect();
    let mut edges: Vec<(u32, u32)> = arcs.iter().map(|(a, b)| (index[a], index[b])).collect();
    if !options.symmetrize {
        let set: std::collections::HashSet<(u32, u32)> = edges.iter().copied().collect();
        edges.retain(|&(a, b)| a == b || set.contains(&(b, a)));
    }
    let (graph, dropped) = Graph::from_edges(labels, edges);
    Ok(ParsedGraph { graph, dropped })
}

/// One simplex per line, vertex ids separated by commas or whitespace.
pub fn parse_simplex_list(text: &str) -> Result<SimplicialNetwork> {
    let mut list = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if is_comment(line) {
            continue;
        }
        let verts = tokens(line, None)
            .into_iter()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::Parse { line: i + 1, msg: format!("bad vertex id '{t}'") })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != verts.len() {
            return Err(Error::Parse { line: i + 1, msg: "repeated vertex".into() });
        }
        list.push(verts);
    }
    Ok(explicit_complex_labeled(&list))
}

/// Points of a common dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim || dim == 0 {
                return Err(Error::Parse { line: i + 1, msg: format!("point has {} coordinates, expected {dim}", p.len()) });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::Parse { line: i + 1, msg: "non-finite coordinate".into() });
            }
        }
        Ok(PointCloud { dim, points })
    }

    /// One point per line, whitespace-separated decimals (commas accepted).
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if is_comment(line) {
                continue;
            }
            let p = tokens(line, None)
                .into_iter()
                .map(|t| t.parse::<f64>().map_err(|_| Error::Parse { line: i + 1, msg: format!("bad coordinate '{t}'") }))
                .collect::<Result<Vec<_>>>()?;
            points.push(p);
            lines.push(i + 1);
        }
        PointCloud::new(points).map_err(|e| match e {
            Error::Parse { line, msg } => Error::Parse { line: lines[line - 1], msg },
            other => other,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        self.points[a]
            .iter()
            .zip(&self.points[b])
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }
}

/// Per-simplex values: the largest pairwise distance among the vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceFiltration {
    /// `values[k][i]` for the i-th k-simplex.
    pub values: Vec<Vec<f64>>,
}

impl DistanceFiltration {
    pub fn order(&self) -> Result<FiltrationOrder> {
        FiltrationOrder::from_values(&self.values)
    }
}

/// Vietoris–Rips complex: an edge for every pair at distance ≤ `epsilon`,
/// then clique expansion up to `max_dim`. Vertex labels are point positions.
pub fn vr_complex(
    cloud: &PointCloud,
    epsilon: f64,
    max_dim: Option<usize>,
) -> (SimplicialNetwork, DistanceFiltration) {
    let n = cloud.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if cloud.distance(a, b) <= epsilon {
                edges.push((a as u32, b as u32));
            }
        }
    }
    let network = clique_complex(&Graph::with_vertices(n, edges), max_dim);
    let values = (0..network.dim_count())
        .map(|k| {
            network
                .simplices(k)
                .iter()
                .map(|s| diameter(cloud, s))
                .collect()
        })
        .collect();
    (network, DistanceFiltration { values })
}

fn diameter(cloud: &PointCloud, s: &Simplex) -> f64 {
    let v = s.vertices();
    let mut d = 0.0f64;
    for (i, &a) in v.iter().enumerate() {
        for &b in &v[i + 1..] {
            d = d.max(cloud.distance(a as usize, b as usize));
        }
    }
    d
}

/// Preferential-attachment generator settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BAConfig {
    pub n_final: usize,
    pub m_attach: usize,
    pub seed: u64,
}

/// Barabási–Albert graph grown from two unconnected nodes.
///
/// Each new node draws `min(m_attach, existing nodes)` distinct targets with
/// probability proportional to degree (uniformly while every degree is zero,
/// or when too few nodes have positive degree). Randomness comes from
/// ChaCha8 seeded with `seed`, so the output is identical on every platform.
/// With the unconnected seed pair the graph has `m_attach·(n_final − 2)`
/// edges once `n_final − 2 ≥ m_attach`.
pub fn ba_generate(cfg: &BAConfig) -> Result<Graph> {
    if cfg.n_final < 2 || cfg.m_attach < 1 {
        return Err(Error::Format(format!(
            "BA configuration needs n >= 2 and m >= 1, got n={} m={}",
            cfg.n_final, cfg.m_attach
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ends: Vec<u32> = Vec::new();
    let mut degree = vec![0usize; cfg.n_final];
    let mut edges = Vec::new();
    for t in 2..cfg.n_final {
        let want = cfg.m_attach.min(t);
        let positive = degree[..t].iter().filter(|&&d| d > 0).count();
        let uniform = ends.is_empty() || positive < want;
        let mut targets: Vec<u32> = Vec::with_capacity(want);
        while targets.len() < want {
            let pick = if uniform {
                rng.gen_range(0..t as u32)
            } else {
                ends[rng.gen_range(0..ends.len())]
            };
            if !targets.contains(&pick) {
                targets.push(pick);
            }
        }
        for &s in &targets {
            edges.push((s, t as u32));
            ends.push(s);
            ends.push(t as u32);
            degree[s as usize] += 1;
            degree[t] += 1;
        }
    }
    Ok(Graph::with_vertices(cfg.n_final, edges))
}

const FORMAT_NAME: &str = "morsetree-network";
const FORMAT_VERSION: u32 = 1;

/// On-disk network document.
#[derive(Serialize, Deserialize)]
struct NetworkDoc {
    format: String,
    version: u32,
    /// `simplices[k]`: every k-simplex as a list of vertex labels.
    simplices: Vec<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    filtration: Option<Vec<Vec<f64>>>,
}

/// Saves a network (and optional per-simplex values) as versioned JSON.
pub fn save_network(network: &SimplicialNetwork, filtration: Option<&DistanceFiltration>) -> String {
    let doc = NetworkDoc {
        format: FORMAT_NAME.into(),
        version: FORMAT_VERSION,
        simplices: (0..network.dim_count())
            .map(|k| (0..network.count(k)).map(|i| network.labeled(k, i)).collect())
            .collect(),
        filtration: filtration.map(|f| f.values.clone()),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Loads a document written by [`save_network`].
pub fn load_network(text: &str) -> Result<(SimplicialNetwork, Option<DistanceFiltration>)> {
    let doc: NetworkDoc = serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    if doc.format != FORMAT_NAME || doc.version != FORMAT_VERSION {
        return Err(Error::Format(format!("{} version {}", doc.format, doc.version)));
    }
    let all: Vec<Vec<u64>> = doc.simplices.iter().flatten().cloned().collect();
    let network = explicit_complex_labeled(&all);
    if network.counts() != doc.simplices.iter().map(Vec::len).collect::<Vec<_>>() {
        return Err(Error::Format("simplex lists are not downward closed".into()));
    }
    let filtration = match doc.filtration {
        None => None,
        Some(values) => {
            // Values were written in registry order of the saved network,
            // which is also the order after reloading.
            for (k, list) in doc.simplices.iter().enumerate() {
                if values.get(k).map(Vec::len) != Some(list.len()) {
                    return Err(Error::Format(format!("filtration values for dimension {k} do not match")));
                }
                for (i, s) in list.iter().enumerate() {
                    if network.find_labeled(s) != Some((k, i)) {
                        return Err(Error::Format("simplices are not in canonical order".into()));
                    }
                }
            }
            Some(DistanceFiltration { values })
        }
    };
    Ok((network, filtration))
}
