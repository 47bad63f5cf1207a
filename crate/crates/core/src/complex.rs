//! The simplicial network container and its constructors.
//!
//! A [`SimplicialNetwork`] keeps one sorted, duplicate-free registry per
//! dimension. Vertices are dense ids `0..m_0` internally; the label table maps
//! them back to the identifiers supplied by the caller. Label remapping is
//! order preserving, so lexicographic order on ids and on labels agree.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::boundary::BoundaryMatrixBundle;
use crate::graph::Graph;
use crate::simplex::{write_tuple, Simplex};

/// Compressed coface lists for one dimension.
#[derive(Debug, Clone)]
pub(crate) struct Cofaces {
    offsets: Vec<usize>,
    items: Vec<u32>,
}

impl Cofaces {
    fn get(&self, i: usize) -> &[u32] {
        &self.items[self.offsets[i]..self.offsets[i + 1]]
    }
}

/// A downward-closed simplicial complex with per-dimension registries.
///
/// Immutable after construction. Face/coface indices and boundary matrices
/// are computed lazily on first use and cached.
pub struct SimplicialNetwork {
    labels: Vec<u64>,
    registry: Vec<Vec<Simplex>>,
    face_index: Vec<OnceLock<Vec<u32>>>,
    coface_index: Vec<OnceLock<Cofaces>>,
    pub(crate) boundary_cache: Vec<OnceLock<BoundaryMatrixBundle>>,
}

impl fmt::Debug for SimplicialNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialNetwork")
            .field("counts", &self.counts())
            .finish()
    }
}

impl Clone for SimplicialNetwork {
    fn clone(&self) -> Self {
        Self::from_parts(self.labels.clone(), self.registry.clone())
    }
}

impl PartialEq for SimplicialNetwork {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.registry == other.registry
    }
}

impl Eq for SimplicialNetwork {}

impl SimplicialNetwork {
    /// Assembles a network from sorted, downward-closed registries.
    pub(crate) fn from_parts(labels: Vec<u64>, mut registry: Vec<Vec<Simplex>>) -> Self {
        while registry.last().is_some_and(Vec::is_empty) {
            registry.pop();
        }
        debug_assert!(registry.iter().all(|r| r.windows(2).all(|w| w[0] < w[1])));
        let dims = registry.len();
        SimplicialNetwork {
            labels,
            registry,
            face_index: (0..dims).map(|_| OnceLock::new()).collect(),
            coface_index: (0..dims).map(|_| OnceLock::new()).collect(),
            boundary_cache: (0..=dims).map(|_| OnceLock::new()).collect(),
        }
    }

    /// The empty network.
    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new())
    }

    /// Highest dimension present, or `None` for the empty network.
    pub fn top_dim(&self) -> Option<usize> {
        self.registry.len().checked_sub(1)
    }

    /// Number of non-empty dimensions (`top_dim + 1`).
    pub fn dim_count(&self) -> usize {
        self.registry.len()
    }

    /// `m_k`, zero beyond the top dimension.
    pub fn count(&self, k: usize) -> usize {
        self.registry.get(k).map_or(0, Vec::len)
    }

    /// The vector `(m_0, …, m_l)`.
    pub fn counts(&self) -> Vec<usize> {
        self.registry.iter().map(Vec::len).collect()
    }

    pub fn total_simplices(&self) -> usize {
        self.registry.iter().map(Vec::len).sum()
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.registry.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, k: usize, i: usize) -> &Simplex {
        &self.registry[k][i]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.registry.get(s.dimension())?.binary_search(s).ok()
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label(&self, v: u32) -> u64 {
        self.labels[v as usize]
    }

    /// The vertex labels of simplex `(k, i)`.
    pub fn labeled(&self, k: usize, i: usize) -> Vec<u64> {
        self.registry[k][i].vertices().iter().map(|&v| self.label(v)).collect()
    }

    /// Renders simplex `(k, i)` with original labels, e.g. `(1,2,5)`.
    pub fn display(&self, k: usize, i: usize) -> String {
        let mut out = String::new();
        write_tuple(&mut out, self.labeled(k, i).into_iter()).expect("string write");
        out
    }

    /// Looks up a simplex given by original labels, in any order.
    pub fn find_labeled(&self, labels: &[u64]) -> Option<(usize, usize)> {
        let mut ids = labels
            .iter()
            .map(|l| self.labels.binary_search(l).ok().map(|i| i as u32))
            .collect::<Option<Vec<_>>>()?;
        if ids.is_empty() {
            return None;
        }
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let s = Simplex::from_sorted(ids);
        let k = s.dimension();
        self.index_of(&s).map(|i| (k, i))
    }

    /// All simplices rewritten with their labels, dimension by dimension.
    /// Feeding this back to [`explicit_complex`] reproduces the network.
    pub fn labeled_simplices(&self) -> Vec<Vec<u64>> {
        (0..self.dim_count())
            .flat_map(|k| (0..self.count(k)).map(move |i| (k, i)))
            .map(|(k, i)| self.labeled(k, i))
            .collect()
    }

    /// Registry indices of the `k+1` faces of `(k, i)`, ordered by the
    /// position of the deleted vertex. Empty for vertices.
    pub fn faces_of(&self, k: usize, i: usize) -> &[u32] {
        if k == 0 {
            return &[];
        }
        let flat = self.face_index[k].get_or_init(|| self.build_faces(k));
        &flat[i * (k + 1)..(i + 1) * (k + 1)]
    }

    /// Registry indices (in dimension `k+1`) of the cofaces of `(k, i)`, ascending.
    pub fn cofaces_of(&self, k: usize, i: usize) -> &[u32] {
        if k + 1 >= self.dim_count() {
            return &[];
        }
        self.coface_index[k]
            .get_or_init(|| self.build_cofaces(k))
            .get(i)
    }

    fn build_faces(&self, k: usize) -> Vec<u32> {
        let lower = &self.registry[k - 1];
        let mut flat = Vec::with_capacity(self.registry[k].len() * (k + 1));
        for s in &self.registry[k] {
            for p in 0..=k {
                let face = s.face_without(p);
                let idx = lower
                    .binary_search(&face)
                    .expect("network is not downward closed");
                flat.push(idx as u32);
            }
        }
        flat
    }

    fn build_cofaces(&self, k: usize) -> Cofaces {
        let n = self.count(k);
        let upper = self.count(k + 1);
        let mut deg = vec![0usize; n + 1];
        for j in 0..upper {
            for &f in self.faces_of(k + 1, j) {
                deg[f as usize + 1] += 1;
            }
        }
        for i in 0..n {
            deg[i + 1] += deg[i];
        }
        let offsets = deg.clone();
        let mut fill = deg;
        let mut items = vec![0u32; offsets[n]];
        for j in 0..upper {
            for &f in self.faces_of(k + 1, j) {
                items[fill[f as usize]] = j as u32;
                fill[f as usize] += 1;
            }
        }
        Cofaces { offsets, items }
    }
}

/// Builds the clique (flag) complex of `graph`, keeping simplices of
/// dimension at most `max_dim` (`None` = unbounded).
///
/// Cliques are grown in increasing vertex order, each extended only by common
/// neighbours of larger id, so every registry comes out lexicographically sorted.
pub fn clique_complex(graph: &Graph, max_dim: Option<usize>) -> SimplicialNetwork {
    let n = graph.vertex_count();
    let limit = max_dim.unwrap_or(usize::MAX);
    let mut registry: Vec<Vec<Simplex>> = Vec::new();
    if n > 0 {
        registry.push((0..n as u32).map(|v| Simplex::from_sorted(vec![v])).collect());
    }
    let mut clique = Vec::new();
    for v in 0..n as u32 {
        let higher: Vec<u32> = graph.neighbors(v).iter().copied().filter(|&w| w > v).collect();
        clique.push(v);
        expand(graph, &mut clique, &higher, limit, &mut registry);
        clique.pop();
    }
    for r in &mut registry {
        // DFS order is already lexicographic per dimension; sorting is a no-op guard.
        r.sort_unstable();
    }
    SimplicialNetwork::from_parts(graph.labels().to_vec(), registry)
}

fn expand(
    graph: &Graph,
    clique: &mut Vec<u32>,
    candidates: &[u32],
    limit: usize,
    registry: &mut Vec<Vec<Simplex>>,
) {
    if clique.len() > limit {
        return;
    }
    for (pos, &c) in candidates.iter().enumerate() {
        clique.push(c);
        let dim = clique.len() - 1;
        if registry.len() <= dim {
            registry.push(Vec::new());
        }
        registry[dim].push(Simplex::from_sorted(clique.clone()));
        if dim < limit {
            let nbrs = graph.neighbors(c);
            let next: Vec<u32> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|w| nbrs.binary_search(w).is_ok())
                .collect();
            if !next.is_empty() {
                expand(graph, clique, &next, limit, registry);
            }
        }
        clique.pop();
    }
}

/// Builds the smallest network containing every listed simplex.
///
/// Vertex values in `simplices` are treated as labels.
pub fn explicit_complex(simplices: &[Simplex]) -> SimplicialNetwork {
    let labeled: Vec<Vec<u64>> = simplices
        .iter()
        .map(|s| s.vertices().iter().map(|&v| u64::from(v)).collect())
        .collect();
    explicit_complex_labeled(&labeled)
}

/// As [`explicit_complex`], for arbitrary 64-bit labels. Each inner list must
/// be non-empty and duplicate free.
pub fn explicit_complex_labeled(simplices: &[Vec<u64>]) -> SimplicialNetwork {
    let labels: Vec<u64> = simplices
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
    for s in simplices {
        let mut ids: Vec<u32> = s
            .iter()
            .map(|l| labels.binary_search(l).expect("label registered") as u32)
            .collect();
        ids.sort_unstable();
        ids.dedup();
        let dim = ids.len() - 1;
        if sets.len() <= dim {
            sets.resize_with(dim + 1, BTreeSet::new);
        }
        sets[dim].insert(Simplex::from_sorted(ids));
    }
    // Close downward, highest dimension first.
    for k in (1..sets.len()).rev() {
        let faces: Vec<Simplex> = sets[k].iter().flat_map(Simplex::faces).collect();
        sets[k - 1].extend(faces);
    }
    let registry = sets.into_iter().map(|s| s.into_iter().collect()).collect();
    SimplicialNetwork::from_parts(labels, registry)
}

/// The alternating sum `m_0 − m_1 + m_2 − …`.
pub fn euler_characteristic(network: &SimplicialNetwork) -> i64 {
    alternating_sum(&network.counts())
}

pub(crate) fn alternating_sum(values: &[usize]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(k, &m)| if k % 2 == 0 { m as i64 } else { -(m as i64) })
        .sum()
}
