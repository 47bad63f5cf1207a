//! Undirected simple graphs with a label table.

/// An undirected simple graph over dense vertex ids `0..n`.
///
/// `labels[i]` is the original identifier of vertex `i`; adjacency lists are
/// sorted and free of self-loops and duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    labels: Vec<u64>,
    adj: Vec<Vec<u32>>,
}

/// Counts of edges discarded while simplifying input into a [`Graph`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Simplification {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl Graph {
    /// Builds a graph on `labels.len()` vertices; self-loops and repeated or
    /// reciprocal edges are dropped and counted.
    pub fn from_edges(
        labels: Vec<u64>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> (Self, Simplification) {
        let n = labels.len();
        let mut adj = vec![Vec::new(); n];
        let mut report = Simplification::default();
        let mut seen = 0usize;
        for (u, v) in edges {
            assert!((u as usize) < n && (v as usize) < n, "edge endpoint out of range");
            seen += 1;
            if u == v {
                report.self_loops += 1;
                continue;
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut kept = 0usize;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            kept += list.len();
        }
        report.duplicates = seen - report.self_loops - kept / 2;
        (Graph { labels, adj }, report)
    }

    /// A graph whose labels are simply `0..n`.
    pub fn with_vertices(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        Self::from_edges((0..n as u64).collect(), edges).0
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)));
        Self::with_vertices(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter().filter(move |&&v| v > u).map(move |&v| (u, v))
        })
    }
}
