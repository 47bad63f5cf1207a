//! Shortening representative cycles.
//!
//! [`shorten_basis`] applies two kinds of length-reducing moves: adding the
//! boundary of a (k+1)-simplex (same homology class) and adding another basis
//! cycle that overlaps it heavily (an elementary change of basis).
//! [`minimal_one_cavities`] instead searches short 1-cycles directly.

use std::collections::VecDeque;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::boundary::{apply_boundary, boundary_matrix, is_cycle, Chain};
use crate::cavity::{solve_cavities, validate_basis, CavityBasis, RepresentativeCycle};
use crate::complex::SimplicialNetwork;
use crate::error::{Error, Result};
use crate::morse::TreeDecomposition;

/// What was added to a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    /// Boundary of the (k+1)-simplex with this index.
    BoundaryAdd(u32),
    /// Another cycle of the same basis dimension, by position.
    CavityAdd(usize),
}

/// One accepted move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShorteningMove {
    pub dim: usize,
    pub round: usize,
    /// Position of the modified cycle within its dimension.
    pub cycle: usize,
    pub kind: MoveKind,
    pub before: usize,
    pub after: usize,
}

pub const DEFAULT_MAX_ROUNDS: usize = 10;

/// Shortens the k-cycles of `basis` round by round.
///
/// In each round the cycles are visited longest first (ties by position) and
/// each gets at most one move: the first candidate that strictly reduces its
/// length. Boundary candidates come first, in simplex order, followed by
/// other cycles sharing more than half of the shorter cycle, in position
/// order. Stops after a round without moves or after `max_rounds`.
pub fn shorten_basis(
    network: &SimplicialNetwork,
    basis: &CavityBasis,
    k: usize,
    max_rounds: usize,
) -> Result<(CavityBasis, Vec<ShorteningMove>)> {
    let mut out = basis.clone();
    let mut log = Vec::new();
    if basis.dim(k).is_empty() {
        return Ok((out, log));
    }
    let has_upper = k + 1 < network.dim_count();
    if has_upper {
        boundary_matrix(network, k + 1)?;
    }
    for round in 1..=max_rounds {
        let cycles = &mut out.cycles[k];
        let mut order: Vec<usize> = (0..cycles.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(cycles[i].len()));
        let mut moved = false;
        for i in order {
            let before = cycles[i].len();
            let mut accepted = None;
            if has_upper {
                let mut candidates: Vec<u32> = cycles[i]
                    .members
                    .members()
                    .iter()
                    .flat_map(|&s| network.cofaces_of(k, s as usize).iter().copied())
                    .collect();
                candidates.sort_unstable();
                candidates.dedup();
                for t in candidates {
                    let faces = network.faces_of(k + 1, t as usize);
                    let shared = faces.iter().filter(|&&f| cycles[i].members.contains(f)).count();
                    let after = before + faces.len() - 2 * shared;
                    if after < before {
                        let add = Chain::new(k, faces.to_vec());
                        accepted = Some((MoveKind::BoundaryAdd(t), cycles[i].members.add(&add)));
                        break;
                    }
                }
            }
            if accepted.is_none() {
                for j in (0..cycles.len()).filter(|&j| j != i) {
                    let shared = cycles[i].members.overlap(&cycles[j].members);
                    let shorter = before.min(cycles[j].len());
                    let after = before + cycles[j].len() - 2 * shared;
                    if 2 * shared > shorter && after < before {
                        accepted = Some((MoveKind::CavityAdd(j), cycles[i].members.add(&cycles[j].members)));
                        break;
                    }
                }
            }
            if let Some((kind, members)) = accepted {
                if !is_cycle(network, &members) {
                    return Err(Error::Internal(format!(
                        "move {kind:?} broke cycle {i} in dimension {k}: boundary size {}",
                        apply_boundary(network, &members).len()
                    )));
                }
                let after = members.len();
                cycles[i].members = members;
                log.push(ShorteningMove { dim: k, round, cycle: i, kind, before, after });
                moved = true;
            }
        }
        if !moved {
            break;
        }
        let report = validate_basis(network, &out);
        if !report.is_valid() {
            return Err(Error::Internal(format!(
                "basis invalid after round {round}: {}",
                report.failures.join("; ")
            )));
        }
    }
    Ok((out, log))
}

/// Move log, one line per move: `dim cycle-id kind candidate before after`.
pub fn move_log_text(network: &SimplicialNetwork, moves: &[ShorteningMove]) -> String {
    let mut out = String::new();
    for m in moves {
        let (kind, candidate) = match m.kind {
            MoveKind::BoundaryAdd(t) => ("boundary", network.display(m.dim + 1, t as usize)),
            MoveKind::CavityAdd(j) => ("cavity", j.to_string()),
        };
        writeln!(out, "{} {} {kind} {candidate} {} {}", m.dim, m.cycle, m.before, m.after).expect("string write");
    }
    out
}

/// Incremental GF(2) span used for independence tests.
struct Span {
    n: usize,
    /// Pivot row → reduced vector with that row as its highest set bit.
    pivots: Vec<Option<FixedBitSet>>,
}

impl Span {
    fn new(n: usize) -> Self {
        Span { n, pivots: vec![None; n] }
    }

    fn reduce(&self, mut v: FixedBitSet) -> FixedBitSet {
        while let Some(top) = v.maximum() {
            match &self.pivots[top] {
                Some(p) => v.symmetric_difference_with(p),
                None => break,
            }
        }
        v
    }

    /// Adds `members` if independent; reports whether it was.
    fn insert(&mut self, members: &[u32]) -> bool {
        let mut v = FixedBitSet::with_capacity(self.n);
        for &m in members {
            v.toggle(m as usize);
        }
        let v = self.reduce(v);
        match v.maximum() {
            Some(top) => {
                self.pivots[top] = Some(v);
                true
            }
            None => false,
        }
    }

    fn is_independent(&self, members: &[u32]) -> bool {
        let mut v = FixedBitSet::with_capacity(self.n);
        for &m in members {
            v.toggle(m as usize);
        }
        !self.reduce(v).is_clear()
    }
}

/// Shortest-first 1-cycle basis.
///
/// For lengths L = 3, 4, … each generator edge `(u,v)` still without a
/// representative looks for simple paths of L−1 edges from `u` to `v`, in
/// lexicographic order of the vertex sequence, and adopts the first resulting
/// cycle independent of the triangle boundaries and the cycles adopted so far.
/// A generator whose spanning-tree cycle length is exceeded adopts the first
/// spanning-tree cycle (over all generators) that is still independent.
pub fn minimal_one_cavities(network: &SimplicialNetwork, decomp: &TreeDecomposition) -> Result<CavityBasis> {
    let dims = network.dim_count();
    let mut basis = CavityBasis { cycles: vec![Vec::new(); dims.max(2)] };
    basis.cycles.truncate(dims.max(1));
    if dims < 2 {
        return Ok(basis);
    }
    let tree_cycles = solve_cavities(network, decomp, 1)?;
    if tree_cycles.is_empty() {
        return Ok(basis);
    }
    let m1 = network.count(1);
    let mut span = Span::new(m1);
    if dims > 2 {
        for col in boundary_matrix(network, 2)?.binary.columns() {
            span.insert(col);
        }
    }
    let n = network.count(0);
    let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for e in 0..m1 {
        let s = network.simplex(1, e).vertices();
        adj[s[0] as usize].push((s[1], e as u32));
        adj[s[1] as usize].push((s[0], e as u32));
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut remaining: Vec<usize> = (0..tree_cycles.len()).collect();
    let mut adopted: Vec<(usize, RepresentativeCycle)> = Vec::new();
    let cap_max = tree_cycles.iter().map(RepresentativeCycle::len).max().unwrap_or(3);
    let mut len = 3;
    while !remaining.is_empty() && len <= cap_max {
        let mut still = Vec::new();
        for &gi in &remaining {
            let g = tree_cycles[gi].generator;
            if len > tree_cycles[gi].len() {
                let Some(pos) = tree_cycles.iter().position(|c| span.is_independent(c.members.members())) else {
                    return Err(Error::Internal("no independent spanning-tree cycle left".into()));
                };
                span.insert(tree_cycles[pos].members.members());
                adopted.push((gi, RepresentativeCycle { dim: 1, generator: g, members: tree_cycles[pos].members.clone() }));
                continue;
            }
            let e = network.simplex(1, g as usize).vertices();
            let found = cycle_search(&adj, e[0], e[1], g, len, |edges| span.is_independent(edges));
            match found {
                Some(mut edges) => {
                    edges.push(g);
                    span.insert(&edges);
                    adopted.push((gi, RepresentativeCycle { dim: 1, generator: g, members: Chain::new(1, edges) }));
                }
                None => still.push(gi),
            }
        }
        remaining = still;
        len += 1;
    }
    for gi in remaining {
        let Some(pos) = tree_cycles.iter().position(|c| span.is_independent(c.members.members())) else {
            return Err(Error::Internal("no independent spanning-tree cycle left".into()));
        };
        span.insert(tree_cycles[pos].members.members());
        adopted.push((gi, RepresentativeCycle { dim: 1, generator: tree_cycles[gi].generator, members: tree_cycles[pos].members.clone() }));
    }
    adopted.sort_by_key(|(gi, _)| *gi);
    basis.cycles[1] = adopted.into_iter().map(|(_, c)| c).collect();
    Ok(basis)
}

/// First simple path `u → v` of exactly `len − 1` edges avoiding edge `skip`
/// whose edges (together with `skip`) satisfy `accept`.
fn cycle_search(
    adj: &[Vec<(u32, u32)>],
    u: u32,
    v: u32,
    skip: u32,
    len: usize,
    mut accept: impl FnMut(&[u32]) -> bool,
) -> Option<Vec<u32>> {
    let steps = len - 1;
    // Hop distance to v, for pruning.
    let mut dist = vec![usize::MAX; adj.len()];
    dist[v as usize] = 0;
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x as usize];
        if d >= steps {
            continue;
        }
        for &(y, e) in &adj[x as usize] {
            if e != skip && dist[y as usize] == usize::MAX {
                dist[y as usize] = d + 1;
                queue.push_back(y);
            }
        }
    }
    let mut on_path = vec![false; adj.len()];
    on_path[u as usize] = true;
    let mut path_edges: Vec<u32> = Vec::with_capacity(len);
    let mut scratch: Vec<u32> = Vec::with_capacity(len);
    // Explicit stack of (vertex, next neighbour position).
    let mut stack: Vec<(u32, usize)> = vec![(u, 0)];
    while let Some(&(x, start)) = stack.last() {
        let depth = stack.len() - 1;
        let nbrs = &adj[x as usize];
        let mut next = start;
        let mut advanced = false;
        while next < nbrs.len() {
            let (y, e) = nbrs[next];
            next += 1;
            if e == skip || on_path[y as usize] {
                continue;
            }
            let left = steps - depth - 1;
            if y == v {
                if left == 0 {
                    scratch.clear();
                    scratch.extend_from_slice(&path_edges);
                    scratch.push(e);
                    scratch.push(skip);
                    if accept(&scratch) {
                        scratch.pop();
                        return Some(scratch);
                    }
                }
                continue;
            }
            if left == 0 || dist[y as usize] > left {
                continue;
            }
            advanced = true;
            stack.last_mut().expect("non-empty").1 = next;
            on_path[y as usize] = true;
            path_edges.push(e);
            stack.push((y, 0));
            break;
        }
        if !advanced {
            stack.pop();
            on_path[x as usize] = false;
            path_edges.pop();
        }
    }
    None
}
