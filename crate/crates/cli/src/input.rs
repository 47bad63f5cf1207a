use std::path::PathBuf;

use clap::{Args, ValueEnum};
use morsetree::{
    ba_generate, clique_complex, load_network, parse_edge_list, parse_simplex_list, vr_complex, BAConfig,
    DistanceFiltration, EdgeListOptions, PointCloud, SimplicialNetwork,
};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    EdgeList,
    SimplexList,
    PointCloud,
    /// JSON written by the library's `save_network`.
    Network,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::EdgeList => "edge-list",
            Kind::SimplexList => "simplex-list",
            Kind::PointCloud => "point-cloud",
            Kind::Network => "network",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Input file
    #[arg(long, conflicts_with = "ba")]
    pub input: Option<PathBuf>,

    /// How to read --input
    #[arg(long, value_enum, default_value = "simplex-list")]
    pub kind: Kind,

    /// Rips radius for point clouds
    #[arg(long)]
    pub epsilon: Option<f64>,

    /// Largest simplex dimension built from graphs and point clouds
    #[arg(long)]
    pub max_dim: Option<usize>,

    /// Generate a Barabási–Albert graph instead of reading a file,
    /// e.g. `--ba n=1000 m=2 seed=42`
    #[arg(long, num_args = 1..=3, value_name = "KEY=VALUE")]
    pub ba: Option<Vec<String>>,

    /// Edge lists: ids start at this value
    #[arg(long, default_value_t = 0)]
    pub index_base: u64,
}

/// A network ready for the pipeline, plus what the manifest should record.
pub struct Loaded {
    pub network: SimplicialNetwork,
    pub distances: Option<DistanceFiltration>,
    pub config: serde_json::Value,
    pub digests: Vec<serde_json::Value>,
}

pub fn digest(path: &std::path::Path, bytes: &[u8]) -> serde_json::Value {
    json!({ "path": path.display().to_string(), "sha256": hex::encode(Sha256::digest(bytes)) })
}

pub fn read(path: &std::path::Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn text(path: &std::path::Path, bytes: Vec<u8>) -> Result<String, Failure> {
    String::from_utf8(bytes).map_err(|_| Failure::input(format!("{}: not UTF-8", path.display())))
}

fn parse_ba(items: &[String]) -> Result<BAConfig, Failure> {
    let mut cfg = BAConfig { n_final: 0, m_attach: 0, seed: 0 };
    let mut seen = [false; 3];
    for item in items {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("--ba expects key=value, got '{item}'")))?;
        let parsed: u64 = value.parse().map_err(|_| Failure::usage(format!("--ba {key}: bad value '{value}'")))?;
        match key {
            "n" => (cfg.n_final, seen[0]) = (parsed as usize, true),
            "m" => (cfg.m_attach, seen[1]) = (parsed as usize, true),
            "seed" => (cfg.seed, seen[2]) = (parsed, true),
            _ => return Err(Failure::usage(format!("--ba: unknown key '{key}'"))),
        }
    }
    if !seen[0] || !seen[1] {
        return Err(Failure::usage("--ba needs n= and m="));
    }
    if cfg.m_attach == 0 {
        return Err(Failure::usage("--ba: m must be at least 1"));
    }
    Ok(cfg)
}

pub fn load(args: &InputArgs) -> Result<Loaded, Failure> {
    if let Some(epsilon) = args.epsilon {
        if !(epsilon >= 0.0) {
            return Err(Failure::usage("--epsilon must be a non-negative number"));
        }
    }
    if let Some(items) = &args.ba {
        let cfg = parse_ba(items)?;
        let graph = ba_generate(&cfg).map_err(Failure::from)?;
        let network = clique_complex(&graph, args.max_dim);
        let config = json!({
            "kind": "ba-gen",
            "n": cfg.n_final,
            "m": cfg.m_attach,
            "seed": cfg.seed,
            "max_dim": args.max_dim,
        });
        return Ok(Loaded { network, distances: None, config, digests: Vec::new() });
    }
    let path = args.input.as_ref().ok_or_else(|| Failure::usage("one of --input or --ba is required"))?;
    let bytes = read(path)?;
    let digests = vec![digest(path, &bytes)];
    let content = text(path, bytes)?;
    let mut config = json!({ "kind": args.kind.name(), "max_dim": args.max_dim });
    let (network, distances) = match args.kind {
        Kind::SimplexList => (parse_simplex_list(&content)?, None),
        Kind::EdgeList => {
            let opts = EdgeListOptions { index_base: args.index_base, ..EdgeListOptions::default() };
            let parsed = parse_edge_list(&content, &opts)?;
            if parsed.dropped.self_loops + parsed.dropped.duplicates > 0 {
                eprintln!(
                    "note: dropped {} self-loops and {} repeated edges",
                    parsed.dropped.self_loops, parsed.dropped.duplicates
                );
            }
            config["index_base"] = json!(args.index_base);
            (clique_complex(&parsed.graph, args.max_dim), None)
        }
        Kind::PointCloud => {
            let epsilon = args.epsilon.ok_or_else(|| Failure::usage("point clouds need --epsilon"))?;
            config["epsilon"] = json!(epsilon);
            let cloud = PointCloud::parse(&content)?;
            let (n, f) = vr_complex(&cloud, epsilon, args.max_dim);
            (n, Some(f))
        }
        Kind::Network => load_network(&content)?,
    };
    Ok(Loaded { network, distances, config, digests })
}
