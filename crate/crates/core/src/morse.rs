//! Spanning trees of every order, simplex classification, and the discrete
//! Morse filtration built from them.
//!
//! For each `k ≥ 1` the k-order spanning tree is the set of pivot columns of
//! `B_k` reduced in lexicographic column order. The remaining k-simplices are
//! split by reducing the tree columns of `B_{k+1}` restricted to non-tree rows:
//! every pivot `(row, column)` pairs a k-simplex with a (k+1)-tree simplex, and
//! rows that never become pivots are the cavity generators, `β_k` of them.
//!
//! The Morse filtration then inserts, in order: the first root vertex, the
//! vertex/tree-edge pairs of a breadth-first traversal, the critical
//! generators of dimension 1, the (edge, triangle) pairs, the critical
//! generators of dimension 2, and so on. Both members of a pair share the
//! step index as their Morse value.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::boundary::boundary_matrix;
use crate::complex::{alternating_sum, explicit_complex_labeled, SimplicialNetwork};
use crate::error::{Error, Result};
use crate::linalg::{gf2_reduce, gf2_reduce_with, ReductionResult};

/// A simplex addressed by dimension and registry index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub dim: usize,
    pub index: u32,
}

impl Cell {
    pub fn new(dim: usize, index: u32) -> Self {
        Cell { dim, index }
    }
}

/// Spanning trees, pairings, and generators for every dimension.
#[derive(Clone, Debug)]
pub struct TreeDecomposition {
    /// `tree[k]`: registry indices of the k-order spanning tree (empty for k = 0).
    pub tree: Vec<Vec<u32>>,
    /// `rank[k] = r_k`, with `r_0 = 0`; one entry per dimension of the network.
    pub rank: Vec<usize>,
    /// `paired[k]`: non-tree k-simplex → its partner in `tree[k+1]`.
    pub paired: Vec<BTreeMap<u32, u32>>,
    /// `generators[k]`: cavity-generating k-simplices, ascending.
    pub generators: Vec<Vec<u32>>,
    /// Lowest vertex of each connected component, ascending.
    pub roots: Vec<u32>,
    /// Breadth-first order over `tree[1]`: each vertex with the edge it was
    /// reached through (`None` for roots).
    pub traversal: Vec<(u32, Option<u32>)>,
    reductions: Vec<Option<ReductionResult>>,
}

impl TreeDecomposition {
    pub fn dim_count(&self) -> usize {
        self.rank.len()
    }

    /// `r_k`, zero outside `1..=top_dim`.
    pub fn r(&self, k: usize) -> usize {
        self.rank.get(k).copied().unwrap_or(0)
    }

    /// The elimination of `B_k` (lexicographic order) that produced `tree[k]`.
    pub fn tree_reduction(&self, k: usize) -> Option<&ReductionResult> {
        self.reductions.get(k).and_then(Option::as_ref)
    }

    pub fn betti(&self) -> Vec<usize> {
        self.generators.iter().map(Vec::len).collect()
    }
}

/// The k-order spanning tree and `r_k`.
pub fn spanning_tree(network: &SimplicialNetwork, k: usize) -> Result<(Vec<u32>, usize)> {
    let red = tree_reduction(network, k)?;
    let mut tree: Vec<u32> = red.pivot_cols.iter().map(|&c| c as u32).collect();
    tree.sort_unstable();
    Ok((tree, red.rank))
}

fn tree_reduction(network: &SimplicialNetwork, k: usize) -> Result<ReductionResult> {
    let b = boundary_matrix(network, k)?;
    let order: Vec<usize> = (0..b.binary.n_cols()).collect();
    Ok(gf2_reduce(&b.binary, &order))
}

/// Splits every simplex into tree, paired, and generator classes.
pub fn classify(network: &SimplicialNetwork) -> Result<TreeDecomposition> {
    let dims = network.dim_count();
    let mut reductions: Vec<Option<ReductionResult>> = vec![None];
    let mut tree = vec![Vec::new()];
    let mut rank = vec![0usize];
    for k in 1..dims {
        let red = tree_reduction(network, k)?;
        let mut t: Vec<u32> = red.pivot_cols.iter().map(|&c| c as u32).collect();
        t.sort_unstable();
        rank.push(red.rank);
        tree.push(t);
        reductions.push(Some(red));
    }

    let mut paired = vec![BTreeMap::new(); dims];
    let mut generators = vec![Vec::new(); dims];
    let (roots, traversal) = if dims > 0 {
        traverse_forest(network, tree.get(1).map_or(&[][..], Vec::as_slice))
    } else {
        (Vec::new(), Vec::new())
    };
    for &(v, e) in &traversal {
        if let Some(e) = e {
            paired[0].insert(v, e);
        }
    }
    if dims > 0 {
        generators[0] = roots.clone();
    }

    for k in 1..dims {
        let in_tree = membership(network.count(k), &tree[k]);
        let non_tree: Vec<u32> = (0..network.count(k) as u32)
            .filter(|&i| !in_tree.contains(i as usize))
            .collect();
        if k + 1 < dims {
            paired[k] = pair_with_upper_tree(network, k, &non_tree, &tree[k + 1])?;
        }
        generators[k] = non_tree
            .into_iter()
            .filter(|i| !paired[k].contains_key(i))
            .collect();
    }
    // The empty network has no dimension 0 either.
    tree.truncate(dims);
    rank.truncate(dims);
    reductions.truncate(dims);

    let decomp = TreeDecomposition { tree, rank, paired, generators, roots, traversal, reductions };
    for k in 0..dims {
        let expected = network.count(k) - decomp.r(k) - decomp.r(k + 1);
        if decomp.generators[k].len() != expected {
            return Err(Error::Classification {
                dim: k,
                detail: format!(
                    "{} generators but m_k - r_k - r_(k+1) = {expected}",
                    decomp.generators[k].len()
                ),
            });
        }
    }
    Ok(decomp)
}

fn membership(n: usize, items: &[u32]) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(n);
    for &i in items {
        set.insert(i as usize);
    }
    set
}

/// Reduces the `tree[k+1]` columns of `B_{k+1}` restricted to non-tree rows.
///
/// The pivot row of each column is the largest-index row of its reduced form
/// that is also a face of the column itself; if no face survives the
/// reduction, the largest-index row is used and the pair is not geometric
/// (the scheduler later breaks it into two critical simplices).
fn pair_with_upper_tree(
    network: &SimplicialNetwork,
    k: usize,
    non_tree: &[u32],
    upper_tree: &[u32],
) -> Result<BTreeMap<u32, u32>> {
    let b = &boundary_matrix(network, k + 1)?.binary;
    let cols: Vec<usize> = upper_tree.iter().map(|&c| c as usize).collect();
    let rows: Vec<usize> = non_tree.iter().map(|&r| r as usize).collect();
    let sub = b.select_columns(&cols).select_rows(&rows);
    let order: Vec<usize> = (0..sub.n_cols()).collect();
    let red = gf2_reduce_with(&sub, &order, |c, support| {
        let own = sub.column(c);
        support
            .iter()
            .rev()
            .find(|r| own.binary_search(r).is_ok())
            .copied()
            .unwrap_or(*support.last().expect("non-empty"))
    });
    if red.rank != upper_tree.len() {
        return Err(Error::Classification {
            dim: k,
            detail: format!(
                "restricted tree block has rank {} but tree[{}] has {} simplices",
                red.rank,
                k + 1,
                upper_tree.len()
            ),
        });
    }
    Ok(red
        .pivot_row_of
        .iter()
        .map(|(&c, &r)| (non_tree[r], upper_tree[c]))
        .collect())
}

/// Breadth-first traversal of the 1-tree from the lowest vertex of each
/// component, neighbours visited by increasing id.
fn traverse_forest(network: &SimplicialNetwork, tree1: &[u32]) -> (Vec<u32>, Vec<(u32, Option<u32>)>) {
    let n = network.count(0);
    let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for &e in tree1 {
        let s = network.simplex(1, e as usize).vertices();
        adj[s[0] as usize].push((s[1], e));
        adj[s[1] as usize].push((s[0], e));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut seen = FixedBitSet::with_capacity(n);
    let mut roots = Vec::new();
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for root in 0..n as u32 {
        if seen.put(root as usize) {
            continue;
        }
        roots.push(root);
        order.push((root, None));
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v as usize] {
                if !seen.put(w as usize) {
                    order.push((w, Some(e)));
                    queue.push_back(w);
                }
            }
        }
    }
    (roots, order)
}

/// Simplex counts, ranks, Betti numbers, and the Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    pub m: Vec<usize>,
    /// `r[k]` for `k = 0..=top_dim`, with `r[0] = 0`.
    pub r: Vec<usize>,
    pub betti: Vec<usize>,
    pub chi: i64,
}

impl BettiVector {
    pub fn from_ranks(m: Vec<usize>, r: Vec<usize>) -> Self {
        let betti = (0..m.len())
            .map(|k| m[k] - r[k] - r.get(k + 1).copied().unwrap_or(0))
            .collect();
        let chi = alternating_sum(&m);
        BettiVector { m, r, betti, chi }
    }

    /// `Σ(−1)^k β_k`.
    pub fn chi_from_betti(&self) -> i64 {
        alternating_sum(&self.betti)
    }
}

/// `β_k = m_k − r_k − r_{k+1}` from the ranks of the boundary matrices.
pub fn betti_numbers(network: &SimplicialNetwork) -> BettiVector {
    let dims = network.dim_count();
    let mut r = vec![0usize; dims];
    for (k, rk) in r.iter_mut().enumerate().skip(1) {
        *rk = tree_reduction(network, k).map(|red| red.rank).unwrap_or(0);
    }
    BettiVector::from_ranks(network.counts(), r)
}

/// One insertion step of a Morse filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Critical(Cell),
    /// `(face, coface)`, inserted together.
    Pair(Cell, Cell),
}

/// A pair from the decomposition that was inserted as two critical simplices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Promotion {
    pub face: Cell,
    pub coface: Cell,
}

/// An ordered sequence of steps with the induced Morse values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseFiltration {
    steps: Vec<Step>,
    values: Vec<Vec<usize>>,
    promotions: Vec<Promotion>,
}

const UNASSIGNED: usize = usize::MAX;

impl MorseFiltration {
    /// Builds a filtration from explicit steps; every simplex of the network
    /// must appear exactly once.
    pub fn from_steps(network: &SimplicialNetwork, steps: Vec<Step>) -> Result<Self> {
        let mut values: Vec<Vec<usize>> =
            (0..network.dim_count()).map(|k| vec![UNASSIGNED; network.count(k)]).collect();
        for (i, step) in steps.iter().enumerate() {
            let cells: &[Cell] = match step {
                Step::Critical(c) => std::slice::from_ref(c),
                Step::Pair(a, b) => &[*a, *b][..],
            };
            for c in cells {
                let slot = values
                    .get_mut(c.dim)
                    .and_then(|v| v.get_mut(c.index as usize))
                    .ok_or_else(|| Error::InvalidFiltration {
                        line: Some(i),
                        msg: format!("cell {c:?} not in network"),
                    })?;
                if *slot != UNASSIGNED {
                    return Err(Error::InvalidFiltration {
                        line: Some(i),
                        msg: format!("{} inserted twice", network.display(c.dim, c.index as usize)),
                    });
                }
                *slot = i;
            }
        }
        if let Some((k, i)) = values
            .iter()
            .enumerate()
            .find_map(|(k, v)| v.iter().position(|&x| x == UNASSIGNED).map(|i| (k, i)))
        {
            return Err(Error::InvalidFiltration {
                line: None,
                msg: format!("{} never inserted", network.display(k, i)),
            });
        }
        Ok(MorseFiltration { steps, values, promotions: Vec::new() })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Final step index `n` (the filtration is `K_0 ⊆ … ⊆ K_n`).
    pub fn n(&self) -> Option<usize> {
        self.steps.len().checked_sub(1)
    }

    pub fn value(&self, cell: Cell) -> usize {
        self.values[cell.dim][cell.index as usize]
    }

    pub fn promotions(&self) -> &[Promotion] {
        &self.promotions
    }

    /// Critical simplices with their step indices, in step order.
    pub fn critical(&self) -> Vec<(usize, Cell)> {
        self.steps
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match s {
                Step::Critical(c) => Some((i, *c)),
                Step::Pair(..) => None,
            })
            .collect()
    }

    /// Critical counts per dimension.
    pub fn critical_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.values.len()];
        for (_, cell) in self.critical() {
            c[cell.dim] += 1;
        }
        c
    }

    /// Writes one step per line: `<i> C <simplex>` or `<i> P <face> <coface>`.
    pub fn to_text(&self, network: &SimplicialNetwork) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            match step {
                Step::Critical(c) => {
                    writeln!(out, "{i} C {}", network.display(c.dim, c.index as usize))
                }
                Step::Pair(a, b) => writeln!(
                    out,
                    "{i} P {} {}",
                    network.display(a.dim, a.index as usize),
                    network.display(b.dim, b.index as usize)
                ),
            }
            .expect("string write");
        }
        out
    }
}

/// Reads the line format written by [`MorseFiltration::to_text`].
///
/// When `network` is `None` the network is rebuilt from the listed
/// simplices, and every face of a listed simplex must itself be listed.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_morse_text(
    text: &str,
    network: Option<&SimplicialNetwork>,
) -> Result<(SimplicialNetwork, MorseFiltration)> {
    let mut raw: Vec<(usize, Vec<Vec<u64>>)> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Error::InvalidFiltration { line: Some(line_no), msg };
        let (idx_tok, rest) = line.split_once(char::is_whitespace).ok_or_else(|| bad("missing step kind".into()))?;
        let idx: usize = idx_tok.parse().map_err(|_| bad(format!("bad step index '{idx_tok}'")))?;
        if idx != raw.len() {
            return Err(bad(format!("expected step index {}, found {idx}", raw.len())));
        }
        let rest = rest.trim_start();
        let (kind, rest) = rest.split_at(rest.chars().next().map_or(0, char::len_utf8));
        let groups = parse_tuples(rest).map_err(bad)?;
        let want = match kind {
            "C" => 1,
            "P" => 2,
            other => return Err(bad(format!("unknown step kind '{other}'"))),
        };
        if groups.len() != want {
            return Err(bad(format!("step kind {kind} needs {want} simplices, found {}", groups.len())));
        }
        raw.push((line_no, groups));
    }

    let owned;
    let network = match network {
        Some(n) => n,
        None => {
            let all: Vec<Vec<u64>> = raw.iter().flat_map(|(_, g)| g.iter().cloned()).collect();
            owned = explicit_complex_labeled(&all);
            &owned
        }
    };
    let mut steps = Vec::with_capacity(raw.len());
    for (line_no, groups) in &raw {
        let cells = groups
            .iter()
            .map(|g| {
                network
                    .find_labeled(g)
                    .map(|(k, i)| Cell::new(k, i as u32))
                    .ok_or_else(|| Error::InvalidFiltration {
                        line: Some(*line_no),
                        msg: format!("simplex {g:?} not in network"),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let step = if cells.len() == 1 {
            Step::Critical(cells[0])
        } else {
            let (a, b) = (cells[0], cells[1]);
            if b.dim != a.dim + 1
                || !network
                    .simplex(a.dim, a.index as usize)
                    .is_face_of(network.simplex(b.dim, b.index as usize))
            {
                return Err(Error::InvalidFiltration {
                    line: Some(*line_no),
                    msg: "pair members are not a face/coface".into(),
                });
            }
            Step::Pair(a, b)
        };
        steps.push(step);
    }
    let filtration = MorseFiltration::from_steps(network, steps).map_err(|e| match e {
        Error::InvalidFiltration { line: Some(i), msg } => Error::InvalidFiltration {
            line: Some(raw[i].0),
            msg,
        },
        other => other,
    })?;
    // Faces must never come after their cofaces.
    for k in 1..network.dim_count() {
        for i in 0..network.count(k) {
            let v = filtration.value(Cell::new(k, i as u32));
            for &f in network.faces_of(k, i) {
                if filtration.value(Cell::new(k - 1, f)) > v {
                    return Err(Error::InvalidFiltration {
                        line: Some(raw[v].0),
                        msg: format!(
                            "{} inserted before its face {}",
                            network.display(k, i),
                            network.display(k - 1, f as usize)
                        ),
                    });
                }
            }
        }
    }
    Ok((network.clone(), filtration))
}

fn parse_tuples(s: &str) -> std::result::Result<Vec<Vec<u64>>, String> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected '(' at '{rest}'"))?;
        let end = body.find(')').ok_or("unterminated simplex")?;
        let verts = body[..end]
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| format!("bad vertex '{}'", t.trim())))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != verts.len() {
            return Err(format!("duplicate vertex in ({})", &body[..end]));
        }
        out.push(verts);
        rest = body[end + 1..].trim_start();
    }
    Ok(out)
}

/// Builds the Morse filtration from a decomposition.
///
/// Pairs of each stage are scheduled greedily: the lexicographically smallest
/// coface whose other faces are all present goes next. If none is ready while
/// pairs remain, the smallest pending face is inserted as critical and its
/// partner is inserted as critical at the end of the stage; each such event is
/// recorded as a [`Promotion`].
pub fn assign_morse(network: &SimplicialNetwork, decomp: &TreeDecomposition) -> Result<MorseFiltration> {
    check_decomposition(network, decomp)?;
    let dims = network.dim_count();
    let mut present: Vec<FixedBitSet> =
        (0..dims).map(|k| FixedBitSet::with_capacity(network.count(k))).collect();
    let mut steps = Vec::with_capacity(network.total_simplices());
    let mut promotions = Vec::new();

    for &(v, e) in &decomp.traversal {
        match e {
            None => steps.push(Step::Critical(Cell::new(0, v))),
            Some(e) => steps.push(Step::Pair(Cell::new(0, v), Cell::new(1, e))),
        }
        present[0].insert(v as usize);
        if let Some(e) = e {
            present[1].insert(e as usize);
        }
    }

    let mut orphans: Vec<u32> = Vec::new();
    for k in 1..dims {
        orphans.sort_unstable();
        for &b in &orphans {
            steps.push(Step::Critical(Cell::new(k, b)));
            present[k].insert(b as usize);
        }
        for &g in &decomp.generators[k] {
            steps.push(Step::Critical(Cell::new(k, g)));
            present[k].insert(g as usize);
        }
        orphans.clear();
        if k + 1 < dims {
            schedule_pairs(network, k, &decomp.paired[k], &mut present, &mut steps, &mut promotions, &mut orphans);
        }
    }

    let mut filtration = MorseFiltration::from_steps(network, steps)?;
    filtration.promotions = promotions;
    Ok(filtration)
}

fn schedule_pairs(
    network: &SimplicialNetwork,
    k: usize,
    paired: &BTreeMap<u32, u32>,
    present: &mut [FixedBitSet],
    steps: &mut Vec<Step>,
    promotions: &mut Vec<Promotion>,
    orphans: &mut Vec<u32>,
) {
    // coface -> face, for pending pairs only
    let mut partner: BTreeMap<u32, u32> = BTreeMap::new();
    for (&a, &b) in paired {
        if network.faces_of(k + 1, b as usize).contains(&a) {
            partner.insert(b, a);
        } else {
            steps.push(Step::Critical(Cell::new(k, a)));
            present[k].insert(a as usize);
            promotions.push(Promotion { face: Cell::new(k, a), coface: Cell::new(k + 1, b) });
            orphans.push(b);
        }
    }
    let mut pending_faces: BTreeSet<u32> = partner.values().copied().collect();
    let mut missing: BTreeMap<u32, usize> = BTreeMap::new();
    let mut ready: BTreeSet<u32> = BTreeSet::new();
    for (&b, &a) in &partner {
        let n = network
            .faces_of(k + 1, b as usize)
            .iter()
            .filter(|&&f| f != a && !present[k].contains(f as usize))
            .count();
        missing.insert(b, n);
        if n == 0 {
            ready.insert(b);
        }
    }

    let insert_face =
        |a: u32, present: &mut [FixedBitSet], partner: &BTreeMap<u32, u32>, missing: &mut BTreeMap<u32, usize>, ready: &mut BTreeSet<u32>| {
            present[k].insert(a as usize);
            for &b in network.cofaces_of(k, a as usize) {
                if partner.get(&b).is_some_and(|&p| p != a) {
                    let m = missing.get_mut(&b).expect("pending coface");
                    *m -= 1;
                    if *m == 0 {
                        ready.insert(b);
                    }
                }
            }
        };

    while !partner.is_empty() {
        if let Some(b) = ready.pop_first() {
            let a = partner.remove(&b).expect("ready coface is pending");
            pending_faces.remove(&a);
            steps.push(Step::Pair(Cell::new(k, a), Cell::new(k + 1, b)));
            present[k + 1].insert(b as usize);
            insert_face(a, present, &partner, &mut missing, &mut ready);
        } else {
            let a = pending_faces.pop_first().expect("pending pairs have faces");
            let b = *partner
                .iter()
                .find(|&(_, &f)| f == a)
                .map(|(b, _)| b)
                .expect("face has a partner");
            partner.remove(&b);
            steps.push(Step::Critical(Cell::new(k, a)));
            promotions.push(Promotion { face: Cell::new(k, a), coface: Cell::new(k + 1, b) });
            orphans.push(b);
            insert_face(a, present, &partner, &mut missing, &mut ready);
        }
    }
}

fn check_decomposition(network: &SimplicialNetwork, d: &TreeDecomposition) -> Result<()> {
    let dims = network.dim_count();
    let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
    if d.tree.len() != dims || d.paired.len() != dims || d.generators.len() != dims || d.rank.len() != dims {
        return bad(format!("decomposition has wrong number of dimensions for a {dims}-dimension network"));
    }
    for k in 0..dims {
        let m = network.count(k);
        let mut seen = FixedBitSet::with_capacity(m);
        let mut mark = |i: u32, what: &str| -> Result<()> {
            if i as usize >= m || seen.put(i as usize) {
                return Err(Error::InvalidDecomposition(format!(
                    "dimension {k}: {what} index {i} out of range or repeated"
                )));
            }
            Ok(())
        };
        if k == 0 {
            for &r in &d.roots {
                mark(r, "root")?;
            }
        } else {
            for &t in &d.tree[k] {
                mark(t, "tree")?;
            }
            for &g in &d.generators[k] {
                mark(g, "generator")?;
            }
        }
        for &a in d.paired[k].keys() {
            mark(a, "paired")?;
        }
        if seen.count_ones(..) != m {
            return bad(format!("dimension {k}: classes do not cover all {m} simplices"));
        }
        if k + 1 < dims {
            let image: BTreeSet<u32> = d.paired[k].values().copied().collect();
            if image.len() != d.paired[k].len() || image.iter().ne(d.tree[k + 1].iter()) {
                return bad(format!("dimension {k}: pairing image is not tree[{}]", k + 1));
            }
        } else if !d.paired[k].is_empty() {
            return bad(format!("dimension {k}: top dimension cannot be paired"));
        }
    }
    let reached: Vec<u32> = d.traversal.iter().map(|&(v, _)| v).collect();
    if reached.len() != network.count(0) {
        return bad("traversal does not visit every vertex".into());
    }
    for &(v, e) in &d.traversal {
        if e != d.paired[0].get(&v).copied() {
            return bad(format!("traversal edge of vertex {v} disagrees with its pairing"));
        }
    }
    Ok(())
}

/// Outcome of checking a function against the discrete Morse conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// `(#U, #V)` per simplex, indexed `[k][i]`.
    pub uv: Vec<Vec<(usize, usize)>>,
    pub critical: Vec<Cell>,
    pub c: Vec<usize>,
    pub m: Vec<usize>,
    pub betti: Vec<usize>,
    pub chi_m: i64,
    pub chi_c: i64,
    pub chi_beta: i64,
    pub promotions: usize,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// `m_k ≥ c_k ≥ β_k` for every k.
    pub fn bounds_hold(&self) -> bool {
        (0..self.c.len()).all(|k| self.m[k] >= self.c[k] && self.c[k] >= self.betti[k])
    }

    /// Whether the three alternating sums agree.
    pub fn euler_consistent(&self) -> bool {
        self.chi_m == self.chi_c && self.chi_c == self.chi_beta
    }
}

/// Counts `#U` and `#V` for every simplex and lists the critical ones.
/// Violations are reported rather than returned as errors.
pub fn validate_morse(network: &SimplicialNetwork, f: &MorseFiltration) -> ValidationReport {
    let dims = network.dim_count();
    let mut uv: Vec<Vec<(usize, usize)>> = (0..dims).map(|k| vec![(0, 0); network.count(k)]).collect();
    let mut violations = Vec::new();
    let mut critical = Vec::new();
    let mut c = vec![0; dims];
    for k in 0..dims {
        for i in 0..network.count(k) {
            let cell = Cell::new(k, i as u32);
            let v = f.value(cell);
            let u_count = network
                .cofaces_of(k, i)
                .iter()
                .filter(|&&b| f.value(Cell::new(k + 1, b)) <= v)
                .count();
            let v_count = network
                .faces_of(k, i)
                .iter()
                .filter(|&&a| f.value(Cell::new(k - 1, a)) >= v)
                .count();
            if network.faces_of(k, i).iter().any(|&a| f.value(Cell::new(k - 1, a)) > v) {
                violations.push(format!("{} has a face with a larger value", network.display(k, i)));
            }
            if u_count > 1 {
                violations.push(format!("{}: #U = {u_count}", network.display(k, i)));
            }
            if v_count > 1 {
                violations.push(format!("{}: #V = {v_count}", network.display(k, i)));
            }
            if u_count == 0 && v_count == 0 {
                critical.push(cell);
                c[k] += 1;
            }
            uv[k][i] = (u_count, v_count);
        }
    }
    let bv = betti_numbers(network);
    ValidationReport {
        uv,
        critical,
        chi_m: alternating_sum(&bv.m),
        chi_c: alternating_sum(&c),
        chi_beta: alternating_sum(&bv.betti),
        c,
        m: bv.m,
        betti: bv.betti,
        promotions: f.promotions.len(),
        violations,
    }
}
